#include <algorithm>
#include <set>

#include "rgrad/errors.hpp"
#include "rgrad/oracle.hpp"

namespace rgrad {

SubgroupHandle brute_verbal_subgroup(const FiniteGroup& g, const SubgroupHandle& h,
                                     std::uint64_t p) {
  std::set<Element> gens;
  for (Element x : h.elements) {
    gens.insert(g.power(x, p));
    for (Element y : h.elements) {
      gens.insert(g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)));
    }
  }
  gens.erase(0);
  return subgroup_closure(g, {gens.begin(), gens.end()});
}

std::vector<SubgroupHandle> brute_delta_series(const FiniteGroup& g,
                                               const std::vector<std::uint64_t>& primes) {
  std::vector<SubgroupHandle> series{whole_group(g)};
  for (std::uint64_t p : primes) {
    if (series.back().order() == 1) break;
    series.push_back(brute_verbal_subgroup(g, series.back(), p));
  }
  return series;
}

LemmaOrdReport check_lemma_ord(const FiniteGroup& g, const std::vector<std::uint64_t>& primes) {
  LemmaOrdReport rep;
  const auto series = brute_delta_series(g, primes);
  rep.precondition = series.back().order() == 1;
  for (std::size_t n = 0; n < series.size(); ++n) {
    std::set<std::uint64_t> allowed(primes.begin() + static_cast<long>(std::min(n, primes.size())),
                                    primes.end());
    for (Element x : series[n].elements) {
      std::uint64_t m = brute_order(g, x);
      for (std::uint64_t q = 2; q <= m; ++q) {
        if (m % q != 0) continue;
        while (m % q == 0) m /= q;
        if (!allowed.count(q)) {
          rep.violations.push_back("element " + std::to_string(x) + " of delta_" +
                                   std::to_string(n) + " has order divisible by " +
                                   std::to_string(q));
        }
      }
    }
  }
  rep.pass = rep.precondition && rep.violations.empty();
  return rep;
}

std::optional<std::size_t> check_contains_delta(const FiniteGroup& g,
                                                const std::vector<std::uint64_t>& primes,
                                                const SubgroupHandle& h) {
  const auto series = brute_delta_series(g, primes);
  for (std::size_t n = 0; n < series.size(); ++n) {
    if (series[n].subset_of(h)) return n;
  }
  return std::nullopt;
}

std::vector<SubgroupHandle> subgroup_lattice(const FiniteGroup& g) {
  std::set<std::vector<Element>> seen;
  std::vector<SubgroupHandle> all;
  auto add = [&](SubgroupHandle h) {
    if (seen.insert(h.elements).second) all.push_back(std::move(h));
  };
  for (Element x = 0; x < g.order(); ++x) add(subgroup_closure(g, {x}));
  // close under joins; every subgroup is generated by its cyclic subgroups
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<Element> gens = all[i].generators;
      gens.insert(gens.end(), all[j].generators.begin(), all[j].generators.end());
      std::sort(gens.begin(), gens.end());
      gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
      add(subgroup_closure(g, std::move(gens)));
    }
  }
  std::sort(all.begin(), all.end(), [](const SubgroupHandle& a, const SubgroupHandle& b) {
    return a.order() != b.order() ? a.order() < b.order() : a.elements < b.elements;
  });
  return all;
}

}  // namespace rgrad
