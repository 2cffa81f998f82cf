#include "rgrad/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "rgrad/errors.hpp"

namespace rgrad {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, BigInt(0)) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw ContractError("IntMatrix: entry count does not match dimensions");
  }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ContractError("IntMatrix: ragged rows");
    for (long v : r) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ContractError("IntMatrix: dimension mismatch in product");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) += a * rhs.at(k, j);
    }
  }
  return out;
}

bool IntMatrix::operator==(const IntMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && entries_ == rhs.entries_;
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const BigInt& v) { return v == 0; });
}

BigInt IntMatrix::determinant() const {
  if (rows_ != cols_) throw ContractError("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix m = *this;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m.at(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt v = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m.at(i, j) = v;
      }
    }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

namespace {

class SmithReducer {
 public:
  SmithReducer(const IntMatrix& a, bool transforms, std::size_t bit_cap)
      : a_(a), transforms_(transforms), bit_cap_(bit_cap) {
    if (transforms_) {
      u_ = IntMatrix::identity(a.rows());
      v_ = IntMatrix::identity(a.cols());
    }
  }

  void run() {
    const std::size_t n = std::min(a_.rows(), a_.cols());
    for (std::size_t t = 0; t < n; ++t) {
      if (!place_pivot(t)) break;
      for (;;) {
        bool clear = true;
        for (std::size_t i = t + 1; i < a_.rows(); ++i) {
          if (a_.at(i, t) == 0) continue;
          BigInt q = a_.at(i, t) / a_.at(t, t);
          add_row(i, t, -q);
          if (a_.at(i, t) != 0) clear = false;
        }
        for (std::size_t j = t + 1; j < a_.cols(); ++j) {
          if (a_.at(t, j) == 0) continue;
          BigInt q = a_.at(t, j) / a_.at(t, t);
          add_col(j, t, -q);
          if (a_.at(t, j) != 0) clear = false;
        }
        if (!clear) {
          place_pivot(t);
          continue;
        }
        // The pivot must divide everything left; otherwise pull an offending
        // row into row t and reduce again.
        std::size_t bad = a_.rows();
        for (std::size_t i = t + 1; i < a_.rows() && bad == a_.rows(); ++i) {
          for (std::size_t j = t + 1; j < a_.cols(); ++j) {
            if (!mpz_divisible_p(a_.at(i, j).get_mpz_t(), a_.at(t, t).get_mpz_t())) {
              bad = i;
              break;
            }
          }
        }
        if (bad == a_.rows()) break;
        add_row(t, bad, 1);
      }
      if (a_.at(t, t) < 0) negate_row(t);
    }
  }

  IntMatrix a_;
  IntMatrix u_;
  IntMatrix v_;

 private:
  // Smallest nonzero |entry| in the lower-right block, ties by (row, col).
  bool place_pivot(std::size_t t) {
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = t; i < a_.rows(); ++i) {
      for (std::size_t j = t; j < a_.cols(); ++j) {
        const BigInt& v = a_.at(i, j);
        if (v == 0) continue;
        if (!found || mpz_cmpabs(v.get_mpz_t(), a_.at(bi, bj).get_mpz_t()) < 0) {
          bi = i;
          bj = j;
          found = true;
        }
      }
    }
    if (!found) return false;
    if (bi != t) swap_rows(t, bi);
    if (bj != t) swap_cols(t, bj);
    return true;
  }

  void check_bits(const BigInt& v) const {
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > bit_cap_) {
      throw BudgetExhausted("Smith normal form: entry exceeds " + std::to_string(bit_cap_) +
                            " bits");
    }
  }

  // row i += c * row k
  void add_row(std::size_t i, std::size_t k, const BigInt& c) {
    for (std::size_t j = 0; j < a_.cols(); ++j) {
      if (a_.at(k, j) == 0) continue;
      a_.at(i, j) += c * a_.at(k, j);
      check_bits(a_.at(i, j));
    }
    if (transforms_) {
      for (std::size_t j = 0; j < u_.cols(); ++j) u_.at(i, j) += c * u_.at(k, j);
    }
  }

  // col j += c * col k
  void add_col(std::size_t j, std::size_t k, const BigInt& c) {
    for (std::size_t i = 0; i < a_.rows(); ++i) {
      if (a_.at(i, k) == 0) continue;
      a_.at(i, j) += c * a_.at(i, k);
      check_bits(a_.at(i, j));
    }
    if (transforms_) {
      for (std::size_t i = 0; i < v_.rows(); ++i) v_.at(i, j) += c * v_.at(i, k);
    }
  }

  void swap_rows(std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < a_.cols(); ++j) std::swap(a_.at(i, j), a_.at(k, j));
    if (transforms_) {
      for (std::size_t j = 0; j < u_.cols(); ++j) std::swap(u_.at(i, j), u_.at(k, j));
    }
  }

  void swap_cols(std::size_t j, std::size_t k) {
    for (std::size_t i = 0; i < a_.rows(); ++i) std::swap(a_.at(i, j), a_.at(i, k));
    if (transforms_) {
      for (std::size_t i = 0; i < v_.rows(); ++i) std::swap(v_.at(i, j), v_.at(i, k));
    }
  }

  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < a_.cols(); ++j) a_.at(i, j) = -a_.at(i, j);
    if (transforms_) {
      for (std::size_t j = 0; j < u_.cols(); ++j) u_.at(i, j) = -u_.at(i, j);
    }
  }

  bool transforms_;
  std::size_t bit_cap_;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a, std::size_t bit_cap) {
  SmithReducer r(a, true, bit_cap);
  r.run();
  return {std::move(r.a_), std::move(r.u_), std::move(r.v_)};
}

std::vector<BigInt> smith_diagonal(const IntMatrix& a, std::size_t bit_cap) {
  SmithReducer r(a, false, bit_cap);
  r.run();
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) out.push_back(r.a_.at(i, i));
  return out;
}

std::size_t AbelianInvariants::free_rank() const {
  return static_cast<std::size_t>(
      std::count_if(factors.begin(), factors.end(), [](const BigInt& f) { return f == 0; }));
}

std::string AbelianInvariants::to_string() const {
  std::vector<std::string> parts;
  if (std::size_t z = free_rank(); z > 0) parts.push_back(z == 1 ? "Z" : "Z^" + std::to_string(z));
  for (const auto& f : factors) {
    if (f != 0) parts.push_back("Z/" + f.get_str());
  }
  if (parts.empty()) return "1";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " x " + parts[i];
  return out;
}

IntMatrix relation_matrix(const Presentation& p) {
  const std::size_t d = p.generator_count();
  IntMatrix m(p.relator_count(), d);
  for (std::size_t i = 0; i < p.relator_count(); ++i) {
    const auto sums = exponent_sums(p.relators()[i], d);
    for (std::size_t j = 0; j < d; ++j) m.at(i, j) = static_cast<long>(sums[j]);
  }
  return m;
}

AbelianInvariants abelian_invariants(const IntMatrix& relations, std::size_t bit_cap) {
  const auto diag = smith_diagonal(relations, bit_cap);
  AbelianInvariants out;
  std::size_t zeros = relations.cols() - diag.size();
  for (const auto& v : diag) {
    if (v == 0) {
      ++zeros;
    } else if (v != 1) {
      out.factors.push_back(v);
    }
  }
  out.factors.insert(out.factors.end(), zeros, BigInt(0));
  return out;
}

AbelianInvariants abelianize(const Presentation& p, std::size_t bit_cap) {
  return abelian_invariants(relation_matrix(p), bit_cap);
}

std::size_t first_betti(const Presentation& p, std::size_t bit_cap) {
  return abelianize(p, bit_cap).free_rank();
}

namespace {

std::uint64_t reduce_mod(const BigInt& v, std::uint64_t p) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return r.get_ui();
}

__extension__ typedef unsigned __int128 u128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

}  // namespace

EchelonModP echelon_mod_p(const IntMatrix& a, std::uint64_t p) {
  if (p < 2 || p >= (1ull << 32) || !is_prime(p)) {
    throw ContractError("echelon_mod_p: modulus must be a prime below 2^32");
  }
  std::vector<std::vector<std::uint64_t>> m(a.rows(), std::vector<std::uint64_t>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = reduce_mod(a.at(i, j), p);
  }
  EchelonModP out;
  out.p = p;
  out.cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const std::uint64_t inv = pow_mod(m[r][c], p - 2, p);
    for (auto& v : m[r]) v = mul_mod(v, inv, p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const std::uint64_t f = m[i][c];
      for (std::size_t j = c; j < a.cols(); ++j) {
        m[i][j] = (m[i][j] + p - mul_mod(f, m[r][j], p)) % p;
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

std::vector<std::size_t> EchelonModP::free_columns() const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (k < pivots.size() && pivots[k] == c) {
      ++k;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::vector<std::uint64_t> EchelonModP::quotient_image(std::size_t j) const {
  const auto free = free_columns();
  std::vector<std::uint64_t> out(free.size(), 0);
  auto it = std::lower_bound(pivots.begin(), pivots.end(), j);
  if (it != pivots.end() && *it == j) {
    // e_j = -(sum over free columns f of R[row][f] e_f) modulo the row space
    const auto& row = rows[static_cast<std::size_t>(it - pivots.begin())];
    for (std::size_t k = 0; k < free.size(); ++k) out[k] = (p - row[free[k]]) % p;
  } else {
    out[static_cast<std::size_t>(std::lower_bound(free.begin(), free.end(), j) - free.begin())] = 1;
  }
  return out;
}

std::size_t matrix_rank_mod_p(const IntMatrix& a, std::uint64_t p) {
  return echelon_mod_p(a, p).rank();
}

std::size_t rank_mod_p(const Presentation& p, std::uint64_t prime) {
  return p.generator_count() - matrix_rank_mod_p(relation_matrix(p), prime);
}

}  // namespace rgrad
