#include "rgrad/word.hpp"

#include <algorithm>
#include <string>

#include "rgrad/errors.hpp"

namespace rgrad {

namespace {

void push_reduced(std::vector<Letter>& out, Letter l, std::size_t cap) {
  if (!out.empty() && out.back() == l.inverse()) {
    out.pop_back();
    return;
  }
  if (out.size() >= cap) {
    throw BudgetExhausted("word length cap of " + std::to_string(cap) + " exceeded");
  }
  out.push_back(l);
}

// Least rotation via the two-pointer minimum-expression scan.
std::size_t least_rotation(std::span<const Letter> s) {
  const std::size_t n = s.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    Letter a = s[(i + k) % n];
    Letter b = s[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

}  // namespace

Word::Word(std::initializer_list<Letter> letters) {
  *this = reduce(std::span<const Letter>(letters.begin(), letters.size()));
}

Word Word::reduce(std::span<const Letter> letters, std::size_t cap) {
  Word w;
  w.letters_.reserve(letters.size());
  for (Letter l : letters) push_reduced(w.letters_, l, cap);
  return w;
}

Word Word::generator_power(std::uint32_t g, long long power) {
  Word w;
  const bool inv = power < 0;
  const unsigned long long n = inv ? -static_cast<unsigned long long>(power)
                                   : static_cast<unsigned long long>(power);
  if (n > kDefaultWordLengthCap) throw BudgetExhausted("word length cap exceeded");
  w.letters_.assign(n, Letter(g, inv));
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    w.letters_.push_back(it->inverse());
  }
  return w;
}

Word Word::power(long long e, std::size_t cap) const {
  if (e == 0 || empty()) return {};
  const Word base = e < 0 ? inverse() : *this;
  const unsigned long long n =
      e < 0 ? -static_cast<unsigned long long>(e) : static_cast<unsigned long long>(e);
  // Conjugate core: base = c u c^-1, base^n = c u^n c^-1.
  std::size_t lo = 0, hi = base.size();
  while (hi - lo >= 2 && base.letters_[lo] == base.letters_[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  const std::size_t core = hi - lo;
  if (core == 0) return {};
  if (n > cap || core * n + 2 * lo > cap) {
    throw BudgetExhausted("word length cap of " + std::to_string(cap) + " exceeded");
  }
  Word w;
  w.letters_.reserve(core * n + 2 * lo);
  w.letters_.insert(w.letters_.end(), base.letters_.begin(), base.letters_.begin() + lo);
  for (unsigned long long i = 0; i < n; ++i) {
    w.letters_.insert(w.letters_.end(), base.letters_.begin() + lo,
                      base.letters_.begin() + hi);
  }
  w.letters_.insert(w.letters_.end(), base.letters_.begin() + hi, base.letters_.end());
  return w;
}

Word Word::cyclically_reduced() const {
  std::size_t lo = 0, hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo] == letters_[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  Word w;
  w.letters_.assign(letters_.begin() + lo, letters_.begin() + hi);
  return w;
}

Word Word::rotated(std::size_t k) const {
  Word w;
  if (letters_.empty()) return w;
  k %= letters_.size();
  w.letters_.reserve(letters_.size());
  w.letters_.insert(w.letters_.end(), letters_.begin() + k, letters_.end());
  w.letters_.insert(w.letters_.end(), letters_.begin(), letters_.begin() + k);
  return w;
}

std::uint32_t Word::generator_bound() const {
  std::uint32_t b = 0;
  for (Letter l : letters_) b = std::max(b, l.generator() + 1);
  return b;
}

Word Word::operator*(const Word& rhs) const {
  Word w = *this;
  w *= rhs;
  return w;
}

Word& Word::operator*=(const Word& rhs) {
  for (Letter l : rhs.letters_) push_reduced(letters_, l, kDefaultWordLengthCap);
  return *this;
}

Word free_reduce(std::span<const Letter> letters) { return Word::reduce(letters); }

Word commutator(const Word& x, const Word& y) {
  return x.inverse() * y.inverse() * x * y;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Word cyclic_canonical(const Word& w) {
  const Word c = w.cyclically_reduced();
  if (c.empty()) return c;
  const Word inv = c.inverse();
  Word a = c.rotated(least_rotation(c.letters()));
  Word b = inv.rotated(least_rotation(inv.letters()));
  return std::min(a, b);
}

std::pair<Word, std::size_t> primitive_root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t period = 1; period <= n / 2; ++period) {
    if (n % period != 0) continue;
    bool ok = true;
    for (std::size_t i = period; i < n && ok; ++i) ok = w[i] == w[i - period];
    if (ok) {
      return {Word::reduce(w.letters().subspan(0, period)), n / period};
    }
  }
  return {w, n == 0 ? 0 : 1};
}

std::optional<long long> cyclic_power_of(const Word& w, const Word& root) {
  const Word core = w.cyclically_reduced();
  const Word r = root.cyclically_reduced();
  if (core.empty()) return 0;
  if (r.empty() || core.size() % r.size() != 0) return std::nullopt;
  const long long k = static_cast<long long>(core.size() / r.size());
  // core must be a rotation of r^k or of r^-k.
  const Word pos = r.power(k);
  if (cyclic_canonical(core) != cyclic_canonical(pos)) return std::nullopt;
  const Word rot = pos.rotated(least_rotation(pos.letters()));
  const Word crot = core.rotated(least_rotation(core.letters()));
  return crot == rot ? k : -k;
}

std::vector<long long> exponent_sums(const Word& w, std::size_t generator_count) {
  std::vector<long long> sums(generator_count, 0);
  for (Letter l : w.letters()) {
    if (l.generator() >= generator_count) {
      throw ContractError("exponent_sums: generator out of range");
    }
    sums[l.generator()] += l.sign();
  }
  return sums;
}

}  // namespace rgrad
