#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "rgrad/errors.hpp"
#include "rgrad/linalg.hpp"
#include "rgrad/presentation.hpp"
#include "rgrad/tietze.hpp"

using namespace rgrad;

TEST_CASE("parse_presentation examples") {
  auto f2 = parse_presentation("gens: a b");
  CHECK(f2.generator_count() == 2);
  CHECK(f2.relator_count() == 0);

  auto c2 = parse_presentation("gens: a\nrel: a^2");
  CHECK(c2.generator_count() == 1);
  REQUIRE(c2.relator_count() == 1);
  CHECK(c2.relators()[0] == Word::generator_power(0, 2));

  auto comm = parse_presentation("gens: a b\nrel: [a,b]^3");
  REQUIRE(comm.relator_count() == 1);
  CHECK(comm.relators()[0].size() == 12);
}

TEST_CASE("parser sugar: inverses, conjugates, nesting, labels") {
  auto p = parse_presentation("# label: test group\ngens: x y\nrel: x' y^-2 (x y)^2\nrel: [x,[x,y]]\n");
  CHECK(p.label() == "test group");
  CHECK(p.relator_count() == 2);
  CHECK(parse_word("x x'", p).empty());
  CHECK(parse_word("y^-1", p) == fixtures::letter(1, true));
  CHECK(parse_word("1", p).empty());
}

TEST_CASE("parser errors carry positions") {
  CHECK_THROWS_AS(parse_presentation("rel: a"), InputError);
  CHECK_THROWS_AS(parse_presentation("gens: a\nrel: b"), InputError);
  CHECK_THROWS_AS(parse_presentation("gens: a a"), InputError);
  CHECK_THROWS_AS(parse_presentation("gens: a\nrel: a a'"), InputError);
  CHECK_THROWS_AS(parse_presentation("gens: a\nrel: (a"), InputError);
  try {
    parse_presentation("gens: a b\nrel: a ^ c");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).rfind("2:", 0) == 0);
  }
}

TEST_CASE("serialization round-trips") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    std::vector<Word> rels;
    for (int j = 0; j < 3; ++j) rels.push_back(fixtures::random_word(rng, 3, 9));
    Presentation p(3, rels, "r" + std::to_string(i));
    auto q = parse_presentation(serialize_presentation(p));
    CHECK(q == p);
    CHECK(q.label() == p.label());
    CHECK(presentation_hash(q) == presentation_hash(p));
  }
}

TEST_CASE("relators are normalized on construction") {
  using fixtures::letter;
  Word a = letter(0), b = letter(1);
  Presentation p(2, {b * a * a * b.inverse(), a * a, (a * a).inverse(), a * a.inverse()});
  CHECK(p.relator_count() == 1);
  CHECK(p.relators()[0] == a * a);
}

TEST_CASE("presentation_deficiency") {
  CHECK(presentation_deficiency(parse_presentation("gens: a b")) == 2);
  CHECK(presentation_deficiency(parse_presentation("gens: a b c\nrel: a^2")) == 2);
  CHECK(presentation_deficiency(parse_presentation("gens: a\nrel: a^2\nrel: a^3")) == -1);
}

TEST_CASE("asserted ledger records the witness") {
  auto p = parse_presentation("gens: a b");
  auto e = asserted_ledger(p);
  CHECK(e.lower_bound == 2);
  CHECK(e.witness_deficiency == 2);
  CHECK(e.witness_hash == presentation_hash(p));
  CHECK(e.derivation == Derivation::asserted_input);
}

TEST_CASE("tietze_simplify examples") {
  auto p = parse_presentation("gens: a b\nrel: b");
  auto s = tietze_simplify_tracked(p);
  CHECK(s.presentation.generator_count() == 1);
  CHECK(s.presentation.relator_count() == 0);
  CHECK(presentation_deficiency(s.presentation) == 1);
  CHECK(s.generator_images[1].empty());

  auto fixed = parse_presentation("gens: a\nrel: a^2");
  CHECK(tietze_simplify(fixed) == fixed);

  Presentation collapsed(1, {fixtures::letter(0) * fixtures::letter(0, true)});
  CHECK(tietze_simplify(collapsed).relator_count() == 0);
}

TEST_CASE("tietze never lowers d - r and keeps the abelianization") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    std::vector<Word> rels;
    for (int j = 0; j < 3; ++j) rels.push_back(fixtures::random_word(rng, 4, 6));
    Presentation p(4, rels);
    auto s = tietze_simplify_tracked(p);
    CHECK(presentation_deficiency(s.presentation) >= presentation_deficiency(p));
    CHECK(abelianize(s.presentation) == abelianize(p));
    CHECK(s.generator_images.size() == 4);
    // every old relator maps to a consequence: trivial in the abelianization
    for (const auto& r : p.relators()) {
      Presentation q = s.presentation.with_relator(substitute(r, s.generator_images));
      CHECK(abelianize(q) == abelianize(s.presentation));
    }
  }
}

TEST_CASE("tietze budget zero is a no-op") {
  auto p = parse_presentation("gens: a b\nrel: b");
  auto s = tietze_simplify_tracked(p, 0);
  CHECK(s.presentation == p);
  CHECK(s.moves == 0);
}
