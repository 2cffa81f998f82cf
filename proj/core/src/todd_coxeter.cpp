// Todd-Coxeter coset enumeration, HLT strategy with lookahead.
//
// Dead cosets are resolved through a union-find forest; rows are compacted
// only when the table fills up, so coset numbers stay in definition order.

#include <algorithm>
#include <deque>

#include "rgrad/coset_table.hpp"
#include "rgrad/errors.hpp"

namespace rgrad {

namespace {

constexpr Coset kUndef = 0xFFFFFFFFu;

class Enumerator {
 public:
  Enumerator(const Presentation& p, std::span<const Word> subgens,
             const EnumerationLimits& limits, const CancelToken& cancel)
      : width_(2 * p.generator_count()), limits_(limits), cancel_(cancel) {
    for (const auto& r : p.relators()) relators_.emplace_back(r.letters().begin(), r.letters().end());
    for (const auto& w : subgens) {
      if (w.generator_bound() > p.generator_count()) {
        throw ContractError("enumerate_cosets: subgroup generator uses an unknown generator");
      }
      subgens_.emplace_back(w.letters().begin(), w.letters().end());
    }
    if (limits_.max_cosets == 0 || limits_.max_steps == 0) {
      throw ContractError("enumerate_cosets: limits must be positive");
    }
  }

  std::vector<Coset> run() {
    new_coset();
    for (std::size_t i = 0; i < subgens_.size();) {
      if (scan(0, subgens_[i], true)) {
        ++i;
      } else {
        make_room(nullptr);
      }
    }
    Coset c = 0;
    while (c < defined_) {
      if (!alive(c)) {
        ++c;
        continue;
      }
      if (process(c)) {
        ++c;
      } else {
        make_room(&c);
      }
    }
    std::vector<Coset> remap = compact();
    (void)remap;
    return std::vector<Coset>(table_.begin(), table_.begin() + defined_ * width_);
  }

 private:
  bool alive(Coset c) const { return parent_[c] == c; }
  Coset& at(Coset c, std::uint32_t code) { return table_[c * width_ + code]; }

  void tick() {
    if (++steps_ > limits_.max_steps) {
      throw BudgetExhausted("coset enumeration exceeded " + std::to_string(limits_.max_steps) +
                            " steps");
    }
    if ((steps_ & 0xFFFF) == 0) cancel_.check();
  }

  Coset new_coset() {
    Coset c = static_cast<Coset>(defined_++);
    if (table_.size() < defined_ * width_) table_.resize(defined_ * width_ * 2, kUndef);
    std::fill(table_.begin() + c * width_, table_.begin() + (c + 1) * width_, kUndef);
    if (parent_.size() < defined_) parent_.resize(defined_ * 2);
    parent_[c] = c;
    return c;
  }

  bool define(Coset c, std::uint32_t code) {
    if (defined_ >= limits_.max_cosets) return false;
    tick();
    Coset n = new_coset();
    at(c, code) = n;
    at(n, code ^ 1u) = c;
    return true;
  }

  // Scans w from coset c; fills gaps when `fill` is set. Returns false only
  // when a definition was needed and there was no room.
  bool scan(Coset c, const std::vector<Letter>& w, bool fill) {
    tick();
    Coset f = c, b = c;
    std::size_t i = 0, j = w.size();
    for (;;) {
      while (i < j && at(f, w[i].code()) != kUndef) f = at(f, w[i++].code());
      if (i == j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j > i && at(b, w[j - 1].code() ^ 1u) != kUndef) b = at(b, w[--j].code() ^ 1u);
      if (j == i) {
        coincidence(f, b);
        return true;
      }
      if (j == i + 1) {
        at(f, w[i].code()) = b;
        at(b, w[i].code() ^ 1u) = f;
        return true;
      }
      if (!fill) return true;
      if (!define(f, w[i].code())) return false;
    }
  }

  // Scans every relator at c and completes its row.
  bool process(Coset c) {
    for (const auto& r : relators_) {
      if (!scan(c, r, true)) return false;
      if (!alive(c)) return true;
    }
    for (std::uint32_t code = 0; code < width_; ++code) {
      if (at(c, code) == kUndef && !define(c, code)) return false;
    }
    return true;
  }

  Coset rep(Coset c) {
    Coset r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      Coset next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(Coset a, Coset b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue_.push_back(b);
  }

  void coincidence(Coset a, Coset b) {
    merge(a, b);
    while (!queue_.empty()) {
      Coset e = queue_.front();
      queue_.pop_front();
      for (std::uint32_t code = 0; code < width_; ++code) {
        Coset f = at(e, code);
        if (f == kUndef) continue;
        at(f, code ^ 1u) = kUndef;
        Coset e1 = rep(e), f1 = rep(f);
        if (at(e1, code) != kUndef) {
          merge(f1, at(e1, code));
        } else if (at(f1, code ^ 1u) != kUndef) {
          merge(e1, at(f1, code ^ 1u));
        } else {
          at(e1, code) = f1;
          at(f1, code ^ 1u) = e1;
        }
      }
    }
  }

  // Lookahead then compaction; `cursor` follows its coset through the renumbering.
  void make_room(Coset* cursor) {
    const std::size_t before = defined_;
    for (Coset c = 0; c < defined_; ++c) {
      for (const auto& r : relators_) {
        if (!alive(c)) break;
        scan(c, r, false);
      }
    }
    std::vector<Coset> remap = compact();
    if (cursor) {
      Coset c = *cursor;
      while (c < remap.size() && remap[c] == kUndef) ++c;
      *cursor = c < remap.size() ? remap[c] : static_cast<Coset>(defined_);
    }
    if (defined_ >= before || defined_ >= limits_.max_cosets) {
      throw BudgetExhausted("coset enumeration exceeded " + std::to_string(limits_.max_cosets) +
                            " cosets");
    }
  }

  std::vector<Coset> compact() {
    std::vector<Coset> remap(defined_, kUndef);
    Coset next = 0;
    for (Coset c = 0; c < defined_; ++c) {
      if (alive(c)) remap[c] = next++;
    }
    for (Coset c = 0; c < defined_; ++c) {
      if (!alive(c)) continue;
      for (std::uint32_t code = 0; code < width_; ++code) {
        Coset v = at(c, code);
        table_[remap[c] * width_ + code] = v == kUndef ? kUndef : remap[rep(v)];
      }
    }
    defined_ = next;
    for (Coset c = 0; c < defined_; ++c) parent_[c] = c;
    return remap;
  }

  std::size_t width_;
  EnumerationLimits limits_;
  const CancelToken& cancel_;
  std::vector<std::vector<Letter>> relators_;
  std::vector<std::vector<Letter>> subgens_;
  std::vector<Coset> table_;
  std::vector<Coset> parent_;
  std::deque<Coset> queue_;
  std::size_t defined_ = 0;
  std::size_t steps_ = 0;
};

}  // namespace

CosetTable enumerate_cosets(const Presentation& p, std::span<const Word> subgens,
                            const EnumerationLimits& limits, const CancelToken& cancel) {
  const std::string hash = presentation_hash(p);
  std::vector<Word> gens(subgens.begin(), subgens.end());
  if (p.generator_count() == 0) return CosetTable(0, {}, std::move(gens), hash);
  cancel.check();
  std::vector<Coset> entries = Enumerator(p, subgens, limits, cancel).run();
  return CosetTable(p.generator_count(), std::move(entries), std::move(gens), hash);
}

}  // namespace rgrad
