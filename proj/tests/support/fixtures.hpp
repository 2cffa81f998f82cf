#pragma once

// Test-side constructions that do not go through the library's algorithms:
// permutation actions, stabilizer generators, brute-force group closures.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rgrad/oracle.hpp"
#include "rgrad/presentation.hpp"
#include "rgrad/word.hpp"

namespace fixtures {

using Perm = std::vector<std::uint32_t>;

inline rgrad::Word letter(std::uint32_t g, bool inv = false) {
  return rgrad::Word{rgrad::Letter(g, inv)};
}

inline Perm invert(const Perm& p) {
  Perm q(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) q[p[i]] = i;
  return q;
}

// Point reached from `x` reading w left to right.
inline std::uint32_t act(const std::vector<Perm>& gens, std::uint32_t x, const rgrad::Word& w) {
  for (auto l : w.letters()) {
    const Perm& p = gens[l.generator()];
    x = l.is_inverse() ? invert(p)[x] : p[x];
  }
  return x;
}

inline bool transitive(const std::vector<Perm>& gens, std::size_t n) {
  std::vector<bool> seen(n, false);
  std::deque<std::uint32_t> q{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    auto x = q.front();
    q.pop_front();
    for (const auto& p : gens) {
      for (auto y : {p[x], invert(p)[x]}) {
        if (!seen[y]) {
          seen[y] = true;
          ++count;
          q.push_back(y);
        }
      }
    }
  }
  return count == n;
}

inline std::vector<Perm> random_transitive_action(std::mt19937_64& rng, std::size_t d,
                                                  std::size_t n) {
  for (;;) {
    std::vector<Perm> gens(d, Perm(n));
    for (auto& p : gens) {
      std::iota(p.begin(), p.end(), 0u);
      std::shuffle(p.begin(), p.end(), rng);
    }
    if (transitive(gens, n)) return gens;
  }
}

// Generators of the stabilizer of point 0: u x v^-1 over every edge, where
// u, v are tree paths from a depth-first tree. Deliberately a different
// tree from the library's breadth-first one.
inline std::vector<rgrad::Word> stabilizer_generators(const std::vector<Perm>& gens,
                                                      std::size_t n) {
  std::vector<std::optional<rgrad::Word>> path(n);
  path[0] = rgrad::Word{};
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (std::uint32_t g = 0; g < gens.size(); ++g) {
      for (bool inv : {false, true}) {
        auto y = inv ? invert(gens[g])[x] : gens[g][x];
        if (!path[y]) {
          path[y] = *path[x] * letter(g, inv);
          stack.push_back(y);
        }
      }
    }
  }
  std::vector<rgrad::Word> out;
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t g = 0; g < gens.size(); ++g) {
      rgrad::Word w = *path[x] * letter(g) * path[gens[g][x]]->inverse();
      if (!w.empty()) out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline rgrad::Word random_word(std::mt19937_64& rng, std::size_t d, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_int_distribution<std::uint32_t> code(0, static_cast<std::uint32_t>(2 * d - 1));
  std::vector<rgrad::Letter> ls;
  std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) ls.push_back(rgrad::Letter::from_code(code(rng)));
  return rgrad::free_reduce(ls);
}

// Order of the permutation spelled by w.
inline std::uint64_t perm_order(const std::vector<Perm>& gens, std::size_t n, const rgrad::Word& w) {
  Perm p(n);
  for (std::uint32_t x = 0; x < n; ++x) p[x] = act(gens, x, w);
  std::uint64_t order = 1;
  std::vector<bool> seen(n, false);
  for (std::uint32_t x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::uint64_t len = 0;
    for (auto y = x; !seen[y]; y = p[y]) {
      seen[y] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

// A presentation whose group maps onto the permutation group `gens`: random
// words raised to their orders, so every relator acts trivially. The
// relators are distinct up to cyclic permutation and inversion.
inline rgrad::Presentation presentation_for_action(std::mt19937_64& rng,
                                                   const std::vector<Perm>& gens, std::size_t n,
                                                   std::size_t relators) {
  std::vector<rgrad::Word> rels;
  while (rels.size() < relators) {
    rgrad::Word w = random_word(rng, gens.size(), 4);
    if (w.cyclically_reduced().empty()) continue;
    rgrad::Word r = w.power(static_cast<long long>(perm_order(gens, n, w)));
    if (r.cyclically_reduced().empty()) continue;
    rels.push_back(r);
    // the presentation drops cyclic repeats; keep the count exact
    if (rgrad::Presentation(gens.size(), rels).relator_count() < rels.size()) rels.pop_back();
  }
  return rgrad::Presentation(gens.size(), rels);
}

inline std::string catalog_dir() { return RGRAD_CATALOG_DIR; }

}  // namespace fixtures
