#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace rgrad {

using BigInt = mpz_class;
using Rational = mpq_class;

bool is_prime(std::uint64_t n);

/// "num/den" with den > 0 and the fraction in lowest terms.
std::string format_rational(const Rational& q);

/// Accepts "num/den" or a plain integer. Throws InputError.
Rational parse_rational(std::string_view text);

BigInt parse_bigint(std::string_view text);

/// A positive integer kept as a product of prime powers with arbitrary
/// precision exponents. Indices of deep δ-subgroups have far too many digits
/// to write out, but their exponents are still ordinary big integers.
class FactoredIndex {
 public:
  FactoredIndex() = default;

  /// Factors a machine-sized positive integer.
  static FactoredIndex of(std::uint64_t n);
  static FactoredIndex prime_power(std::uint64_t p, const BigInt& exponent);

  FactoredIndex operator*(const FactoredIndex& other) const;
  bool operator==(const FactoredIndex& other) const = default;

  [[nodiscard]] bool is_one() const { return exponents_.empty(); }
  [[nodiscard]] const std::map<std::uint64_t, BigInt>& exponents() const {
    return exponents_;
  }

  /// Upper bound on log2 of the value.
  [[nodiscard]] double log2_estimate() const;

  /// The value as an integer, if it fits in `max_bits` bits.
  [[nodiscard]] std::optional<BigInt> value(std::size_t max_bits) const;

  /// Canonical text: "1" or "p^e*q^f" with primes ascending and exponent 1
  /// written as a bare prime.
  [[nodiscard]] std::string to_string() const;
  static FactoredIndex parse(std::string_view text);

 private:
  std::map<std::uint64_t, BigInt> exponents_;
};

/// value = ratio * index, exact. Quantities like L(D) - 1 that scale with an
/// index too large to expand.
struct ScaledIndex {
  Rational ratio;
  FactoredIndex index;

  [[nodiscard]] std::optional<BigInt> value(std::size_t max_bits) const;
};

}  // namespace rgrad
