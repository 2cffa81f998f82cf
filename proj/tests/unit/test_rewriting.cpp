#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "rgrad/coset_table.hpp"
#include "rgrad/errors.hpp"
#include "rgrad/linalg.hpp"
#include "rgrad/rewriting.hpp"
#include "rgrad/tietze.hpp"

using namespace rgrad;
using fixtures::letter;

namespace {

CosetTable table_of(const Presentation& p, const std::vector<std::string>& subgens) {
  std::vector<Word> h;
  for (const auto& s : subgens) h.push_back(parse_word(s, p));
  return enumerate_cosets(p, h);
}

// F2 acting on (Z/2)^2 = {0, a, b, ab}: the kernel is [F2,F2]F2^2.
CosetTable klein_table() {
  return CosetTable::from_permutations({{1, 0, 3, 2}, {2, 3, 0, 1}});
}

}  // namespace

TEST_CASE("index 1 returns the input presentation") {
  auto p = parse_presentation("gens: a b\nrel: a^2 b^3");
  auto t = table_of(p, {"a", "b"});
  auto sp = rewrite_subgroup_presentation(p, t);
  CHECK(sp.raw_generator_count == 2);
  CHECK(sp.raw_relator_count == 1);
  CHECK(sp.presentation.generator_count() == 2);
  CHECK(sp.presentation.relator_count() == 1);
  CHECK(sp.ledger.lower_bound == 1);
  CHECK(abelianize(sp.presentation) == abelianize(p));
}

TEST_CASE("F2 modulo squares and commutators: a free subgroup of rank 5") {
  auto p = parse_presentation("gens: a b");
  auto sp = rewrite_subgroup_presentation(p, klein_table());
  CHECK(sp.presentation.generator_count() == 5);
  CHECK(sp.presentation.relator_count() == 0);
  CHECK(sp.ledger.lower_bound == 5);
  CHECK(sp.ledger.derivation == Derivation::finite_index_transfer);
  CHECK(first_betti(sp.presentation) == 5);
}

TEST_CASE("raw counts for a one-relator group") {
  auto p = parse_presentation("gens: a b\nrel: a^2");
  auto t = table_of(p, {"b", "a^2", "a b a'"});
  REQUIRE(t.index() == 2);
  auto sp = rewrite_subgroup_presentation(p, t);
  CHECK(sp.raw_generator_count == 3);
  CHECK(sp.raw_relator_count == 2);
  CHECK(sp.raw_relators.size() == 2);
  CHECK(sp.ledger.lower_bound - 1 >= 0);
  CHECK(sp.ledger.lower_bound == 1);
}

TEST_CASE("raw relators are conjugates of the relators") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 25; ++i) {
    std::size_t n = 2 + rng() % 7;
    auto perms = fixtures::random_transitive_action(rng, 2, n);
    auto p = fixtures::presentation_for_action(rng, perms, n, 2);
    auto t = CosetTable::from_permutations(perms);
    auto sp = rewrite_subgroup_presentation(p, t);
    auto tr = schreier_transversal(t);
    REQUIRE(sp.raw_relators.size() == p.relator_count() * n);
    std::size_t k = 0;
    for (const auto& r : p.relators()) {
      for (Coset c = 0; c < n; ++c, ++k) {
        const Word& rep = tr.representatives[c];
        CHECK(substitute(sp.raw_relators[k], sp.schreier_words) == rep * r * rep.inverse());
      }
    }
  }
}

TEST_CASE("rewriting inverts substitution on subgroup words") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 25; ++i) {
    std::size_t n = 1 + rng() % 9;
    auto perms = fixtures::random_transitive_action(rng, 3, n);
    auto t = CosetTable::from_permutations(perms);
    auto tr = schreier_transversal(t);
    auto rw = EdgeRewriter::schreier(t, tr);
    auto words = schreier_generator_words(t, tr);
    CHECK(words.size() == 2 * n + 1);
    for (int j = 0; j < 20; ++j) {
      Word w = fixtures::random_word(rng, 3, 12);
      Coset end = 0;
      Word r = rw.rewrite(0, w, &end);
      CHECK(end == fixtures::act(perms, 0, w));
      if (end == 0) CHECK(substitute(r, words) == w);
    }
  }
}

TEST_CASE("simplified presentation keeps the abelianization") {
  auto p = parse_presentation("gens: a b\nrel: a^3\nrel: b^2\nrel: (a b)^4");
  auto t = table_of(p, {"a"});
  auto raw = rewrite_subgroup_presentation(p, t, 0);
  auto simp = rewrite_subgroup_presentation(p, t, 1000);
  CHECK(abelianize(raw.presentation) == abelianize(simp.presentation));
  CHECK(presentation_deficiency(simp.presentation) >= presentation_deficiency(raw.presentation));
  CHECK(simp.generator_images.size() == raw.raw_generator_count);
}

TEST_CASE("pushdown_normal_closure examples") {
  SUBCASE("whole group, m = 1") {
    auto p = parse_presentation("gens: a b");
    auto t = table_of(p, {"a", "b"});
    auto tr = schreier_transversal(t);
    auto rw = EdgeRewriter::schreier(t, tr);
    Word g = parse_word("a b a", p);
    auto rels = pushdown_normal_closure(rw, g, 1);
    REQUIRE(rels.size() == 1);
    CHECK(rels[0] == rw.rewrite(0, g));
  }
  SUBCASE("<a> over <a^2>") {
    auto p = parse_presentation("gens: a");
    auto t = table_of(p, {"a^2"});
    auto tr = schreier_transversal(t);
    auto rw = EdgeRewriter::schreier(t, tr);
    auto rels = pushdown_normal_closure(rw, letter(0), 2);
    REQUIRE(rels.size() == 1);
    CHECK(rels[0].size() == 1);
    CHECK(substitute(rels[0], schreier_generator_words(t, tr)) == letter(0) * letter(0));
  }
  SUBCASE("F2 over [F2,F2]F2^2, g = a") {
    auto t = klein_table();
    auto tr = schreier_transversal(t);
    auto rw = EdgeRewriter::schreier(t, tr);
    CHECK(pushdown_normal_closure(rw, letter(0), 2).size() == 2);
    CHECK_THROWS_AS(pushdown_normal_closure(rw, letter(0), 4), ContractError);
    CHECK_THROWS_AS(pushdown_normal_closure(rw, letter(0), 3), ContractError);
  }
}

TEST_CASE("pushdown relators are conjugates of g^m") {
  std::mt19937_64 rng(37);
  for (const auto& name : catalog_names(fixtures::catalog_dir())) {
    auto e = load_catalog_entry(fixtures::catalog_dir(), name);
    auto d = e.presentation.generator_count();
    auto free = Presentation::free_group(d);
    // kernel of F_d -> group: the regular action
    std::vector<std::vector<Coset>> perms(d, std::vector<Coset>(e.group.order()));
    for (std::size_t g = 0; g < d; ++g) {
      for (Element x = 0; x < e.group.order(); ++x) perms[g][x] = e.group.mul(x, e.generator_images[g]);
    }
    auto t = CosetTable::from_permutations(perms);
    auto tr = schreier_transversal(t);
    auto rw = EdgeRewriter::schreier(t, tr);
    auto words = schreier_generator_words(t, tr);
    for (int i = 0; i < 5; ++i) {
      Word g = fixtures::random_word(rng, d, 6);
      auto m = brute_order(e.group, e.group.evaluate(g, e.generator_images));
      auto rels = pushdown_normal_closure(rw, g, m);
      CHECK(rels.size() == e.group.order() / m);
      for (const auto& r : rels) {
        Word back = substitute(r, words);
        // a conjugate of g^m by some coset representative
        bool found = false;
        for (const auto& rep : tr.representatives) {
          if (rep * g.power(static_cast<long long>(m)) * rep.inverse() == back) found = true;
        }
        CHECK(found);
      }
    }
  }
}
