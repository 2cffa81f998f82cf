#include <random>

#include <benchmark/benchmark.h>

#include "rgrad/coset_table.hpp"
#include "rgrad/engine.hpp"
#include "rgrad/linalg.hpp"
#include "rgrad/pi_series.hpp"
#include "rgrad/presentation.hpp"

using namespace rgrad;

namespace {

// PSL(2,7) = <a,b | a^2, b^3, (ab)^7, [a,b]^4>, index 168 over the trivial subgroup.
void BM_CosetEnumeration(benchmark::State& state) {
  auto p = parse_presentation("gens: a b\nrel: a^2\nrel: b^3\nrel: (a b)^7\nrel: [a,b]^4");
  for (auto _ : state) {
    auto t = enumerate_cosets(p, {});
    benchmark::DoNotOptimize(t.index());
  }
}
BENCHMARK(BM_CosetEnumeration);

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> entry(-9, 9);
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a.at(i, j) = entry(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_DeltaChainF2(benchmark::State& state) {
  auto f2 = Presentation::free_group(2);
  auto pi = PiSequence::parse("2,3");
  for (auto _ : state) {
    auto chain = pi_chain(f2, pi, 2);
    benchmark::DoNotOptimize(chain.depth());
  }
}
BENCHMARK(BM_DeltaChainF2)->Unit(benchmark::kMillisecond);

void BM_ConstructionF2(benchmark::State& state) {
  EngineConfig c;
  c.seed = Presentation::free_group(2);
  c.asserted_deficiency = 2;
  c.pi = PiSequence::parse("2,3,5,7,11");
  c.epsilon = Rational(1, 2);
  c.budgets.max_elements = 4;
  for (auto _ : state) benchmark::DoNotOptimize(run_engine(c).records.size());
}
BENCHMARK(BM_ConstructionF2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
