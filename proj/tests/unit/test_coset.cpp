#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "rgrad/cancel.hpp"
#include "rgrad/coset_table.hpp"
#include "rgrad/errors.hpp"
#include "rgrad/oracle.hpp"

using namespace rgrad;
using fixtures::letter;

namespace {

CosetTable enumerate(const std::string& text, const std::vector<std::string>& subgens) {
  auto p = parse_presentation(text);
  std::vector<Word> h;
  for (const auto& s : subgens) h.push_back(parse_word(s, p));
  return enumerate_cosets(p, h);
}

}  // namespace

TEST_CASE("enumerate_cosets examples") {
  CHECK(enumerate("gens: a b", {"a", "b"}).index() == 1);
  CHECK(enumerate("gens: a\nrel: a^5", {}).index() == 5);
  CHECK(enumerate("gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^3", {"a"}).index() == 6);
}

TEST_CASE("order-12 example agrees with a permutation model") {
  // a = (0 1)(2 3), b = (0 1 2) satisfy a^2 = b^3 = (ab)^3 = 1 and generate A4
  std::vector<std::vector<std::uint32_t>> gens{{1, 0, 3, 2}, {1, 2, 0, 3}};
  std::vector<Element> images;
  auto g = FiniteGroup::from_permutations(gens, 100, &images);
  CHECK(g.order() == 12);
  auto p = parse_presentation("gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^3");
  for (const auto& r : p.relators()) CHECK(g.evaluate(r, images) == 0);
  CHECK(enumerate_cosets(p, {}).index() == 12);
  CHECK(enumerate_cosets(p, {}).index() / enumerate_cosets(p, std::vector<Word>{letter(0)}).index() ==
        brute_order(g, images[0]));
}

TEST_CASE("catalog presentations enumerate to the table orders") {
  for (const auto& name : catalog_names(fixtures::catalog_dir())) {
    CAPTURE(name);
    auto e = load_catalog_entry(fixtures::catalog_dir(), name);
    CHECK(enumerate_cosets(e.presentation, {}).index() == e.group.order());
    for (const auto& r : e.presentation.relators()) CHECK(e.group.evaluate(r, e.generator_images) == 0);
  }
}

TEST_CASE("word_action and order_in_quotient") {
  auto c5 = enumerate("gens: a\nrel: a^5", {});
  for (Coset c = 0; c < 5; ++c) CHECK(word_action(c5, c, Word{}) == c);
  // cosets are numbered in definition order, and scanning a^5 defines a^k as coset k
  for (int k = -12; k < 12; ++k) {
    CHECK(word_action(c5, 0, Word::generator_power(0, k)) == static_cast<Coset>(((k % 5) + 5) % 5));
  }
  CHECK(word_action(c5, 0, Word::generator_power(0, 3)) == 3);
  auto one = enumerate("gens: a b", {"a", "b"});
  CHECK(word_action(one, 0, Word{Letter(0, false), Letter(1, true)}) == 0);
  CHECK(order_in_quotient(c5, Word{}) == 1);
  CHECK(order_in_quotient(c5, Word::generator_power(0, 2)) == 5);

  // F2 mod [F2,F2]F2^2 is (Z/2)^2
  auto k4 = enumerate("gens: a b\nrel: a^2\nrel: b^2\nrel: [a,b]", {});
  CHECK(k4.index() == 4);
  CHECK(order_in_quotient(k4, letter(0)) == 2);
  CHECK(order_in_quotient(k4, letter(0) * letter(1)) == 2);
}

TEST_CASE("order_in_quotient divides the quotient order on catalog groups") {
  std::mt19937_64 rng(5);
  for (const auto& name : catalog_names(fixtures::catalog_dir())) {
    auto e = load_catalog_entry(fixtures::catalog_dir(), name);
    auto t = enumerate_cosets(e.presentation, {});
    for (int i = 0; i < 20; ++i) {
      Word w = fixtures::random_word(rng, e.presentation.generator_count(), 8);
      auto m = order_in_quotient(t, w);
      CHECK(t.index() % m == 0);
      CHECK(m == brute_order(e.group, e.group.evaluate(w, e.generator_images)));
    }
  }
}

TEST_CASE("schreier transversal examples") {
  auto one = enumerate("gens: a b", {"a", "b"});
  auto tr1 = schreier_transversal(one);
  REQUIRE(tr1.representatives.size() == 1);
  CHECK(tr1.representatives[0].empty());

  auto c5 = enumerate("gens: a\nrel: a^5", {});
  auto tr = schreier_transversal(c5);
  REQUIRE(tr.representatives.size() == 5);
  std::vector<std::size_t> lengths;
  for (const auto& r : tr.representatives) lengths.push_back(r.size());
  std::sort(lengths.begin(), lengths.end());
  // breadth first with inverse edges: a^3 and a^4 come out as a'^2 and a'
  CHECK(lengths == std::vector<std::size_t>{0, 1, 1, 2, 2});
  for (Coset c = 0; c < 5; ++c) CHECK(word_action(c5, 0, tr.representatives[c]) == c);

  auto k4 = enumerate("gens: a b\nrel: a^2\nrel: b^2\nrel: [a,b]", {});
  auto tr4 = schreier_transversal(k4);
  std::vector<std::size_t> l4;
  for (const auto& r : tr4.representatives) l4.push_back(r.size());
  std::sort(l4.begin(), l4.end());
  CHECK(l4 == std::vector<std::size_t>{0, 1, 1, 2});
}

TEST_CASE("transversals are prefix closed and land on their cosets") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 40; ++i) {
    std::size_t n = 2 + rng() % 10;
    auto perms = fixtures::random_transitive_action(rng, 2, n);
    auto t = CosetTable::from_permutations(perms);
    auto tr = schreier_transversal(t);
    CHECK(tr.representatives[0].empty());
    for (Coset c = 0; c < t.index(); ++c) {
      const Word& r = tr.representatives[c];
      CHECK(word_action(t, 0, r) == c);
      if (c != 0) {
        CHECK(tr.representatives[tr.parent[c]] * Word{tr.parent_letter[c]} == r);
      }
    }
  }
}

TEST_CASE("randomized subgroups: index and membership match the action") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 40; ++i) {
    std::size_t d = 2 + i % 2;
    std::size_t n = 1 + rng() % 12;
    auto perms = fixtures::random_transitive_action(rng, d, n);
    auto h = fixtures::stabilizer_generators(perms, n);
    auto t = enumerate_cosets(Presentation::free_group(d), h);
    CHECK(t.index() == n);
    CHECK(check_table(t, Presentation::free_group(d)).empty());
    for (int j = 0; j < 30; ++j) {
      Word w = fixtures::random_word(rng, d, 10);
      CHECK((word_action(t, 0, w) == 0) == (fixtures::act(perms, 0, w) == 0));
    }
  }
}

TEST_CASE("tables are deterministic and standardized") {
  auto p = parse_presentation("gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^3");
  auto t1 = enumerate_cosets(p, {});
  auto t2 = enumerate_cosets(p, {});
  CHECK(serialize_table(t1) == serialize_table(t2));
  CHECK(table_hash(t1) == table_hash(t2));
  auto st = t1.standardized().first;
  CHECK(st.standardized().first == st);
  CHECK(st.index() == t1.index());
}

TEST_CASE("table constructor and check_table reject bad tables") {
  // two cosets, generator swaps them
  CHECK_NOTHROW(CosetTable(1, {1, 1, 0, 0}));
  CHECK_THROWS_AS(CosetTable(1, {1, 0, 0, 0}), ContractError);
  CHECK_THROWS_AS(CosetTable(1, {0, 0, 1, 1}), ContractError);  // not transitive
  auto c2 = parse_presentation("gens: a\nrel: a^3");
  CosetTable t(1, {1, 1, 0, 0});
  CHECK_FALSE(check_table(t, c2).empty());
}

TEST_CASE("budgets and cancellation") {
  auto f2 = parse_presentation("gens: a b");
  EnumerationLimits small;
  small.max_cosets = 50;
  CHECK_THROWS_AS(enumerate_cosets(f2, {}, small), BudgetExhausted);
  auto token = CancelToken::make();
  token.cancel();
  CHECK_THROWS_AS(enumerate_cosets(parse_presentation("gens: a\nrel: a^5"), {}, {}, token),
                  BudgetExhausted);
}
