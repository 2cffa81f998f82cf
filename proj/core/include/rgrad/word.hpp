#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace rgrad {

/// A generator or its inverse. Codes order letters as x0, x0', x1, x1', ...
/// which is the tie-breaking order used everywhere (ShortLex, Todd-Coxeter
/// columns, spanning trees).
class Letter {
 public:
  constexpr Letter(std::uint32_t generator, bool inverse)
      : code_(2 * generator + (inverse ? 1u : 0u)) {}

  static constexpr Letter from_code(std::uint32_t code) {
    return Letter(code >> 1, (code & 1u) != 0);
  }

  [[nodiscard]] constexpr std::uint32_t generator() const { return code_ >> 1; }
  [[nodiscard]] constexpr bool is_inverse() const { return (code_ & 1u) != 0; }
  [[nodiscard]] constexpr int sign() const { return is_inverse() ? -1 : 1; }
  [[nodiscard]] constexpr Letter inverse() const { return from_code(code_ ^ 1u); }
  [[nodiscard]] constexpr std::uint32_t code() const { return code_; }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::uint32_t code_;
};

inline constexpr std::size_t kDefaultWordLengthCap = 1'000'000;

/// A freely reduced word. Construction always reduces; every operation that
/// could exceed the length cap throws BudgetExhausted.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters);

  static Word reduce(std::span<const Letter> letters,
                     std::size_t cap = kDefaultWordLengthCap);

  /// x_g^power.
  static Word generator_power(std::uint32_t g, long long power);

  [[nodiscard]] std::span<const Letter> letters() const { return letters_; }
  [[nodiscard]] std::size_t size() const { return letters_.size(); }
  [[nodiscard]] bool empty() const { return letters_.empty(); }
  [[nodiscard]] Letter operator[](std::size_t i) const { return letters_[i]; }

  [[nodiscard]] Word inverse() const;
  [[nodiscard]] Word power(long long e, std::size_t cap = kDefaultWordLengthCap) const;
  [[nodiscard]] Word cyclically_reduced() const;
  /// Requires a cyclically reduced word.
  [[nodiscard]] Word rotated(std::size_t k) const;
  /// One past the largest generator index used, 0 for the empty word.
  [[nodiscard]] std::uint32_t generator_bound() const;

  Word operator*(const Word& rhs) const;
  Word& operator*=(const Word& rhs);

  bool operator==(const Word&) const = default;
  /// Lexicographic on letter codes; use shortlex_less for enumeration order.
  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

Word free_reduce(std::span<const Letter> letters);

/// x^-1 y^-1 x y
Word commutator(const Word& x, const Word& y);

bool shortlex_less(const Word& a, const Word& b);

/// The lexicographically least rotation of w or of w^-1. Two cyclically
/// reduced words define the same relator up to conjugation and inversion iff
/// their canonical forms agree.
Word cyclic_canonical(const Word& w);

/// If the cyclic core of w is a power of a rotation of `root`^(+-1), returns
/// that power's exponent; used to detect w^e = 1 from a relator root^e.
std::optional<long long> cyclic_power_of(const Word& w, const Word& root);

/// Shortest v with w = v^k for the cyclically reduced w, returned with k.
std::pair<Word, std::size_t> primitive_root(const Word& w);

/// Exponent sum of every generator in w, indexed by generator.
std::vector<long long> exponent_sums(const Word& w, std::size_t generator_count);

}  // namespace rgrad
