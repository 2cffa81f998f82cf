#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "rgrad/coset_table.hpp"
#include "rgrad/errors.hpp"
#include "rgrad/linalg.hpp"
#include "rgrad/oracle.hpp"
#include "rgrad/pi_series.hpp"
#include "rgrad/symbolic_chain.hpp"

using namespace rgrad;
using fixtures::letter;

namespace {

std::vector<std::uint64_t> indices(const PiChain& c) {
  std::vector<std::uint64_t> out;
  for (const auto& s : c.stages) out.push_back(s.cumulative_index);
  return out;
}

// The permutation group of the cumulative table's columns: G / delta_i itself
// when delta_i is normal.
FiniteGroup quotient_group(const CosetTable& t, std::vector<Element>* images) {
  std::vector<std::vector<std::uint32_t>> perms(t.generator_count(), std::vector<std::uint32_t>(t.index()));
  for (std::uint32_t g = 0; g < t.generator_count(); ++g) {
    for (Coset c = 0; c < t.index(); ++c) perms[g][c] = t.act(c, Letter(g, false));
  }
  return FiniteGroup::from_permutations(perms, 10'000, images);
}

}  // namespace

TEST_CASE("PiSequence parsing and modes") {
  CHECK(PiSequence::parse("2,3,5").primes() == std::vector<std::uint64_t>{2, 3, 5});
  CHECK(PiSequence::parse("(2, 3)").to_string() == "(2,3)");
  CHECK(PiSequence::parse("2,3,5").mode() == PiMode::all_distinct);
  CHECK(PiSequence::parse("2,2,2").mode() == PiMode::constant_p);
  CHECK(PiSequence::parse("3").mode() == PiMode::constant_p);
  CHECK(PiSequence::parse("2,3,2").mode() == PiMode::mixed);
  CHECK_THROWS_AS(PiSequence::parse("2,4"), InputError);
  CHECK_THROWS_AS(PiSequence::parse("2,x"), InputError);
  auto pi = PiSequence::parse("2,3");
  CHECK(pi.at(1) == 2);
  CHECK(pi.at(2) == 3);
  CHECK_THROWS_AS((void)pi.at(3), BudgetExhausted);
}

TEST_CASE("delta_step examples") {
  auto trivial = delta_step(parse_presentation("gens: a\nrel: a"), 5);
  CHECK(trivial.relative_index == 1);
  CHECK(trivial.cumulative_index == 1);

  auto f2 = delta_step(Presentation::free_group(2), 2);
  CHECK(f2.relative_index == 4);
  CHECK(f2.presentation.generator_count() == 5);
  CHECK(f2.presentation.relator_count() == 0);
  CHECK(f2.raw_generator_count == 5);
  CHECK(f2.ledger.lower_bound == 5);

  auto c2 = delta_step(parse_presentation("gens: a\nrel: a^2"), 2);
  CHECK(c2.relative_index == 2);
  // one Schreier generator, a^2, which the relators then kill
  CHECK(c2.raw_generator_count == 1);
  CHECK(c2.raw_relator_count == 2);
  CHECK(enumerate_cosets(c2.presentation, {}).index() == 1);
}

TEST_CASE("pi_chain examples") {
  auto f2 = pi_chain(Presentation::free_group(2), PiSequence::parse("2,3"), 2);
  REQUIRE(!f2.failed_level);
  CHECK(indices(f2) == std::vector<std::uint64_t>{4, 972});
  CHECK(f2.level(1).presentation.generator_count() == 5);
  CHECK(f2.level(2).relative_index == 243);
  CHECK(f2.level(2).rank_exponent == 5);

  CHECK(pi_chain(Presentation::free_group(2), PiSequence::parse("2,3"), 0).depth() == 0);

  auto z6 = pi_chain(parse_presentation("gens: a\nrel: a^6"), PiSequence::parse("2,3"), 2);
  CHECK(indices(z6) == std::vector<std::uint64_t>{2, 6});
  CHECK(enumerate_cosets(z6.level(2).presentation, {}).index() == 1);
}

TEST_CASE("F2 / delta_2 cross-checked against brute force") {
  auto chain = pi_chain(Presentation::free_group(2), PiSequence::parse("2,3"), 2);
  std::vector<Element> images;
  auto q = quotient_group(chain.level(2).cumulative_table, &images);
  CHECK(q.order() == 972);  // regular action: the subgroup is normal
  auto series = brute_delta_series(q, {2, 3});
  REQUIRE(series.size() == 3);
  CHECK(series[1].order() == 243);
  CHECK(series[2].order() == 1);
  // delta_1 is free of rank 5: its Schreier rank and its abelianization agree
  CHECK(first_betti(chain.level(1).presentation) == 5);
  CHECK(rank_mod_p(chain.level(1).presentation, 3) == 5);
}

TEST_CASE("order_mod_delta examples") {
  auto f2 = pi_chain(Presentation::free_group(2), PiSequence::parse("2,3,5"), 2);
  CHECK(order_mod_delta(f2, Word{}, 2) == 1);
  CHECK(order_mod_delta(f2, letter(0), 0) == 1);
  CHECK(order_mod_delta(f2, letter(0), 1) == 2);
  CHECK(order_mod_delta(f2, letter(0), 2) == 6);
  auto z6 = pi_chain(parse_presentation("gens: a\nrel: a^6"), PiSequence::parse("2,3"), 2);
  CHECK(order_mod_delta(z6, letter(0), 2) == 6);
}

TEST_CASE("verify_graded_prefix passes on built chains") {
  auto s3 = pi_chain(parse_presentation("gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^2"),
                     PiSequence::parse("2,3"), 2);
  CHECK(indices(s3) == std::vector<std::uint64_t>{2, 6});
  CHECK(verify_graded_prefix(s3).pass());
  auto f2 = pi_chain(Presentation::free_group(2), PiSequence::parse("2,3"), 2);
  CHECK(verify_graded_prefix(f2).pass());
  auto f3 = pi_chain(Presentation::free_group(3), PiSequence::parse("3"), 1);
  CHECK(indices(f3) == std::vector<std::uint64_t>{27});
  CHECK(verify_graded_prefix(f3).pass());
}

TEST_CASE("verify_graded_prefix reports a corrupted table") {
  auto chain = pi_chain(Presentation::free_group(2), PiSequence::parse("2,3"), 2);
  const CosetTable& t = chain.stages[1].cumulative_table;
  std::vector<std::vector<Coset>> perms(2, std::vector<Coset>(t.index()));
  for (std::uint32_t g = 0; g < 2; ++g) {
    for (Coset c = 0; c < t.index(); ++c) perms[g][c] = t.act(c, Letter(g, false));
  }
  std::swap(perms[0][5], perms[0][6]);
  chain.stages[1].cumulative_table = CosetTable::from_permutations(perms);
  auto rep = verify_graded_prefix(chain);
  CHECK_FALSE(rep.pass());
  CHECK(rep.first_failure() == 2);
  CHECK(rep.stages[0].pass);
}

TEST_CASE("catalog chains match brute-force delta series") {
  for (const auto& name : catalog_names(fixtures::catalog_dir())) {
    auto e = load_catalog_entry(fixtures::catalog_dir(), name);
    for (const char* primes : {"2,3", "3,2", "2,2,2"}) {
      CAPTURE(name);
      CAPTURE(primes);
      auto pi = PiSequence::parse(primes);
      auto chain = pi_chain(e.presentation, pi, pi.size());
      REQUIRE(!chain.failed_level);
      CHECK(verify_graded_prefix(chain).pass());
      auto series = brute_delta_series(e.group, pi.primes());
      for (std::size_t i = 0; i <= chain.depth(); ++i) {
        auto order = i < series.size() ? series[i].order() : 1;
        CHECK(chain.level(i).cumulative_index * order == e.group.order());
      }
    }
  }
}

TEST_CASE("budget failures stop the chain") {
  ChainLimits limits;
  limits.max_index = 100;
  auto chain = pi_chain(Presentation::free_group(2), PiSequence::parse("2,3"), 2, limits);
  CHECK(chain.depth() == 1);
  CHECK(chain.failed_level == 2);
  CHECK_FALSE(chain.failure.empty());
}

TEST_CASE("chain dumps are deterministic") {
  auto a = pi_chain(Presentation::free_group(2), PiSequence::parse("2,3"), 2);
  auto b = pi_chain(Presentation::free_group(2), PiSequence::parse("2,3"), 2);
  CHECK(chain_dump_json(a) == chain_dump_json(b));
  CHECK(chain_dump_lines(a) == chain_dump_lines(b));
  const std::string lines = chain_dump_lines(a);
  CHECK(std::count(lines.begin(), lines.end(), '\n') == 2);
}

TEST_CASE("symbolic levels keep exact ratios") {
  auto root = node_from_stage(base_stage(Presentation::free_group(2)));
  CHECK(root.excess_ratio == 1);
  ChainLimits limits;
  limits.max_index = 1000;
  auto n1 = next_node(root, 2, limits);
  auto n2 = next_node(n1, 3, limits);
  auto n3 = next_node(n2, 5, limits);
  CHECK(n1.materialized());
  CHECK(n2.materialized());
  CHECK_FALSE(n3.materialized());
  CHECK(n3.index.to_string() == "2^2*3^5*5^973");
  CHECK(n3.excess_ratio == 1);
  REQUIRE(n3.free_ratio.has_value());
  CHECK(*n3.free_ratio == 1);
  auto r = node_rank_mod_p(n3, 7);
  CHECK(r.source == "free_rank");
  CHECK(r.excess_ratio == 1);

  auto c6 = node_from_stage(base_stage(parse_presentation("gens: a b\nrel: a^6")));
  limits.max_index = 3;
  auto m1 = next_node(c6, 2, limits);
  CHECK_THROWS_AS(next_node(m1, 3, limits), BudgetExhausted);
}

TEST_CASE("factored indices") {
  auto x = FactoredIndex::of(972);
  CHECK(x.to_string() == "2^2*3^5");
  CHECK(FactoredIndex::parse("2^2*3^5") == x);
  CHECK(x.value(64) == BigInt(972));
  auto big = x * FactoredIndex::prime_power(5, BigInt(1000));
  CHECK_FALSE(big.value(64).has_value());
  CHECK(FactoredIndex::of(1).is_one());
  CHECK(FactoredIndex::of(1).to_string() == "1");
  CHECK_THROWS_AS(FactoredIndex::parse("4^2"), InputError);
}
