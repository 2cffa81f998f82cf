#include "rgrad/numeric.hpp"

#include <cmath>
#include <sstream>

#include "rgrad/errors.hpp"

namespace rgrad {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) return false;
  }
  return true;
}

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  if (!is_integer_text(text)) {
    throw InputError("not an integer: '" + std::string(text) + "'");
  }
  return BigInt(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_bigint(text));
  BigInt num = parse_bigint(text.substr(0, slash));
  BigInt den = parse_bigint(text.substr(slash + 1));
  if (den <= 0) throw InputError("rational denominator must be positive: '" +
                                 std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

FactoredIndex FactoredIndex::of(std::uint64_t n) {
  if (n == 0) throw ContractError("FactoredIndex::of(0)");
  FactoredIndex f;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    while (n % q == 0) {
      f.exponents_[q] += 1;
      n /= q;
    }
  }
  if (n > 1) f.exponents_[n] += 1;
  return f;
}

FactoredIndex FactoredIndex::prime_power(std::uint64_t p, const BigInt& exponent) {
  if (!is_prime(p)) throw ContractError("prime_power: base is not prime");
  if (exponent < 0) throw ContractError("prime_power: negative exponent");
  FactoredIndex f;
  if (exponent > 0) f.exponents_[p] = exponent;
  return f;
}

FactoredIndex FactoredIndex::operator*(const FactoredIndex& other) const {
  FactoredIndex f = *this;
  for (const auto& [p, e] : other.exponents_) f.exponents_[p] += e;
  return f;
}

double FactoredIndex::log2_estimate() const {
  double bits = 0.0;
  for (const auto& [p, e] : exponents_) {
    bits += e.get_d() * std::log2(static_cast<double>(p));
  }
  return bits;
}

std::optional<BigInt> FactoredIndex::value(std::size_t max_bits) const {
  if (log2_estimate() > static_cast<double>(max_bits)) return std::nullopt;
  BigInt v = 1;
  for (const auto& [p, e] : exponents_) {
    BigInt pe;
    mpz_pow_ui(pe.get_mpz_t(), BigInt(static_cast<unsigned long>(p)).get_mpz_t(),
               e.get_ui());
    v *= pe;
  }
  return v;
}

std::string FactoredIndex::to_string() const {
  if (exponents_.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : exponents_) {
    if (!first) os << '*';
    first = false;
    os << p;
    if (e != 1) os << '^' << e.get_str();
  }
  return os.str();
}

FactoredIndex FactoredIndex::parse(std::string_view text) {
  FactoredIndex f;
  if (text == "1") return f;
  std::uint64_t last = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t star = text.find('*', pos);
    std::string_view part =
        text.substr(pos, star == std::string_view::npos ? std::string_view::npos : star - pos);
    std::size_t caret = part.find('^');
    std::string_view base = part.substr(0, caret);
    if (base.empty() || base[0] == '-' || !is_integer_text(base)) {
      throw InputError("bad factored index: '" + std::string(text) + "'");
    }
    std::uint64_t p = std::stoull(std::string(base));
    BigInt e = 1;
    if (caret != std::string_view::npos) e = parse_bigint(part.substr(caret + 1));
    if (!is_prime(p) || p <= last || (e < 2 && caret != std::string_view::npos)) {
      throw InputError("non-canonical factored index: '" + std::string(text) + "'");
    }
    last = p;
    f.exponents_[p] = e;
    if (star == std::string_view::npos) break;
    pos = star + 1;
  }
  return f;
}

std::optional<BigInt> ScaledIndex::value(std::size_t max_bits) const {
  auto idx = index.value(max_bits);
  if (!idx) return std::nullopt;
  Rational v = ratio * Rational(*idx);
  v.canonicalize();
  if (v.get_den() != 1) return std::nullopt;
  return BigInt(v.get_num());
}

}  // namespace rgrad
