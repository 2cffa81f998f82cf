#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rgrad/numeric.hpp"
#include "rgrad/presentation.hpp"

namespace rgrad {

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  BigInt& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  [[nodiscard]] const BigInt& at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  [[nodiscard]] const std::vector<BigInt>& entries() const { return entries_; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const;

  [[nodiscard]] bool is_zero() const;

  /// Fraction-free (Bareiss) determinant of a square matrix.
  [[nodiscard]] BigInt determinant() const;

  [[nodiscard]] std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> entries_;
};

inline constexpr std::size_t kDefaultEntryBitCap = 1u << 20;

struct SmithForm {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
};

/// S = U A V with U, V unimodular and S diagonal, nonnegative, each
/// diagonal entry dividing the next (zeros last). Throws BudgetExhausted
/// when an intermediate entry exceeds `bit_cap` bits.
SmithForm smith_normal_form(const IntMatrix& a, std::size_t bit_cap = kDefaultEntryBitCap);

/// The diagonal of the Smith form only, without transforms; length min(rows, cols).
std::vector<BigInt> smith_diagonal(const IntMatrix& a, std::size_t bit_cap = kDefaultEntryBitCap);

/// Z^d / (row space). Invariant factors >= 2 ascending, then one 0 per Z.
struct AbelianInvariants {
  std::vector<BigInt> factors;

  [[nodiscard]] std::size_t free_rank() const;
  /// "Z^2 x Z/2 x Z/6", or "1" for the trivial group.
  [[nodiscard]] std::string to_string() const;
  bool operator==(const AbelianInvariants&) const = default;
};

/// Row i is the exponent-sum vector of relator i.
IntMatrix relation_matrix(const Presentation& p);

AbelianInvariants abelian_invariants(const IntMatrix& relations,
                                     std::size_t bit_cap = kDefaultEntryBitCap);
AbelianInvariants abelianize(const Presentation& p, std::size_t bit_cap = kDefaultEntryBitCap);
std::size_t first_betti(const Presentation& p, std::size_t bit_cap = kDefaultEntryBitCap);

/// Reduced row echelon form over F_p of an integer matrix.
struct EchelonModP {
  std::uint64_t p = 0;
  std::size_t cols = 0;
  /// Nonzero rows of the RREF, entries in [0, p).
  std::vector<std::vector<std::uint64_t>> rows;
  std::vector<std::size_t> pivots;

  [[nodiscard]] std::size_t rank() const { return rows.size(); }
  /// Columns without a pivot; they index a basis of F_p^cols / rowspace.
  [[nodiscard]] std::vector<std::size_t> free_columns() const;
  /// Coordinates of the unit vector e_j in that quotient basis.
  [[nodiscard]] std::vector<std::uint64_t> quotient_image(std::size_t j) const;
};

/// p must be a prime below 2^32.
EchelonModP echelon_mod_p(const IntMatrix& a, std::uint64_t p);

std::size_t matrix_rank_mod_p(const IntMatrix& a, std::uint64_t p);

/// dim_{F_p} of G / [G,G] G^p, i.e. d - rank_p(relation matrix).
std::size_t rank_mod_p(const Presentation& p, std::uint64_t prime);

}  // namespace rgrad
