#include "rgrad/tietze.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "rgrad/errors.hpp"

namespace rgrad {

Word substitute(const Word& w, const std::vector<Word>& images) {
  Word out;
  for (Letter l : w.letters()) {
    if (l.generator() >= images.size()) throw ContractError("substitute: generator out of range");
    const Word& img = images[l.generator()];
    out *= l.is_inverse() ? img.inverse() : img;
  }
  return out;
}

namespace {

class Simplifier {
 public:
  Simplifier(const Presentation& p, std::size_t budget, const CancelToken& cancel)
      : source_(p), budget_(budget), cancel_(cancel) {
    const std::size_t d = p.generator_count();
    alive_.assign(d, true);
    eliminated_.resize(d);
    relators_ = p.relators();
    live_.assign(relators_.size(), true);
  }

  SimplifyResult run() {
    normalize();
    while (moves_ < budget_) {
      cancel_.check();
      if (pure_eliminations()) continue;
      if (!substitution_move()) break;
    }
    return finish();
  }

 private:
  bool spend() {
    if (moves_ >= budget_) return false;
    ++moves_;
    return true;
  }

  // Cyclically reduce, drop empties and duplicates.
  void normalize() {
    std::set<Word> seen;
    for (std::size_t i = 0; i < relators_.size(); ++i) {
      if (!live_[i]) continue;
      relators_[i] = relators_[i].cyclically_reduced();
      if (relators_[i].empty() || !seen.insert(cyclic_canonical(relators_[i])).second) {
        if (!spend()) return;
        live_[i] = false;
      }
    }
  }

  std::vector<std::size_t> occurrence_counts() const {
    std::vector<std::size_t> occ(alive_.size(), 0);
    for (std::size_t i = 0; i < relators_.size(); ++i) {
      if (!live_[i]) continue;
      for (Letter l : relators_[i].letters()) ++occ[l.generator()];
    }
    return occ;
  }

  // Generator occurring exactly once in r, lowest index first.
  static std::vector<std::uint32_t> singletons(const Word& r) {
    std::vector<std::uint32_t> gens;
    for (Letter l : r.letters()) gens.push_back(l.generator());
    std::sort(gens.begin(), gens.end());
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < gens.size();) {
      std::size_t j = i;
      while (j < gens.size() && gens[j] == gens[i]) ++j;
      if (j - i == 1) out.push_back(gens[i]);
      i = j;
    }
    return out;
  }

  // x occurring once in r: r = u x^e v  =>  x = (v u)^(-e).
  static Word solve_for(const Word& r, std::uint32_t x) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i].generator() != x) continue;
      Word rot = r.rotated(i);  // x^e w
      Word rest = Word::reduce(rot.letters().subspan(1));
      return r[i].is_inverse() ? rest : rest.inverse();
    }
    throw InvariantViolation("solve_for: generator not in relator");
  }

  void eliminate(std::size_t rel, std::uint32_t x) {
    Word value = solve_for(relators_[rel], x);
    live_[rel] = false;
    alive_[x] = false;
    eliminated_[x] = value;
    order_.push_back(x);
  }

  // Eliminations that touch no other relator; one linear pass per call.
  bool pure_eliminations() {
    auto occ = occurrence_counts();
    bool any = false;
    for (std::size_t i = 0; i < relators_.size(); ++i) {
      if (!live_[i]) continue;
      for (std::uint32_t x : singletons(relators_[i])) {
        if (occ[x] != 1) continue;
        if (!spend()) return false;
        for (Letter l : relators_[i].letters()) --occ[l.generator()];
        eliminate(i, x);
        any = true;
        break;
      }
    }
    return any;
  }

  bool substitution_move() {
    auto occ = occurrence_counts();
    std::size_t best_rel = 0;
    std::uint32_t best_gen = 0;
    long long best_delta = std::numeric_limits<long long>::max();
    for (std::size_t i = 0; i < relators_.size(); ++i) {
      if (!live_[i]) continue;
      const long long len = static_cast<long long>(relators_[i].size());
      for (std::uint32_t x : singletons(relators_[i])) {
        const long long others = static_cast<long long>(occ[x]) - 1;
        const long long delta = others * (len - 2) - len;
        if (delta < best_delta) {
          best_delta = delta;
          best_rel = i;
          best_gen = x;
        }
      }
    }
    if (best_delta > 0 || best_delta == std::numeric_limits<long long>::max()) return false;
    if (!spend()) return false;
    const Word value = solve_for(relators_[best_rel], best_gen);
    eliminate(best_rel, best_gen);
    std::vector<Word> images(alive_.size());
    for (std::uint32_t g = 0; g < alive_.size(); ++g) images[g] = Word::generator_power(g, 1);
    images[best_gen] = value;
    for (std::size_t i = 0; i < relators_.size(); ++i) {
      if (!live_[i]) continue;
      bool touches = false;
      for (Letter l : relators_[i].letters()) touches |= l.generator() == best_gen;
      if (touches) relators_[i] = substitute(relators_[i], images);
    }
    normalize();
    return true;
  }

  SimplifyResult finish() {
    const std::size_t d = alive_.size();
    std::vector<std::uint32_t> renumber(d, 0);
    std::uint32_t next = 0;
    std::vector<std::string> names;
    for (std::uint32_t g = 0; g < d; ++g) {
      if (!alive_[g]) continue;
      renumber[g] = next++;
      if (!source_.names().empty()) names.push_back(source_.names()[g]);
    }
    // Resolve eliminated generators in reverse elimination order: a value
    // only mentions generators alive at the time, which were eliminated later
    // or survive.
    std::vector<Word> images(d);
    for (std::uint32_t g = 0; g < d; ++g) {
      if (alive_[g]) {
        images[g] = Word::generator_power(renumber[g], 1);
      }
    }
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      images[*it] = substitute(eliminated_[*it], images);
    }
    std::vector<Word> rels;
    std::vector<Word> identity_images(d);
    for (std::uint32_t g = 0; g < d; ++g) {
      if (alive_[g]) identity_images[g] = Word::generator_power(renumber[g], 1);
    }
    for (std::size_t i = 0; i < relators_.size(); ++i) {
      if (live_[i]) rels.push_back(substitute(relators_[i], identity_images));
    }
    SimplifyResult res{Presentation(next, std::move(rels), source_.label(), std::move(names)),
                       std::move(images), moves_};
    return res;
  }

  const Presentation& source_;
  std::size_t budget_;
  const CancelToken& cancel_;
  std::vector<bool> alive_;
  std::vector<Word> eliminated_;
  std::vector<std::uint32_t> order_;
  std::vector<Word> relators_;
  std::vector<bool> live_;
  std::size_t moves_ = 0;
};

}  // namespace

SimplifyResult tietze_simplify_tracked(const Presentation& p, std::size_t budget,
                                       const CancelToken& cancel) {
  return Simplifier(p, budget, cancel).run();
}

Presentation tietze_simplify(const Presentation& p, std::size_t budget) {
  return tietze_simplify_tracked(p, budget).presentation;
}

}  // namespace rgrad
