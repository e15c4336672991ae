#pragma once

// Exact linear algebra over Z and Q.
//
// Everything here is tolerance-free: matrices hold GMP integers or rationals,
// elimination is fraction-free (Bareiss), and the modular helpers are only
// ever used to *propose* an answer that is then certified exactly.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace koopcrypt {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

inline constexpr std::size_t kAllColumns = std::numeric_limits<std::size_t>::max();

/// Fraction-free reduced row echelon form: `reduced == denominator * rref(input)`
/// with every pivot equal to `denominator`.
struct Echelon {
  IntegerMatrix reduced;
  std::vector<std::size_t> pivot_columns;
  Integer denominator = 1;

  std::size_t rank() const noexcept { return pivot_columns.size(); }
};

/// Bareiss-style Gauss-Jordan elimination. Pivots are only taken among the
/// first `pivot_column_limit` columns; the remaining columns ride along.
Echelon fraction_free_rref(IntegerMatrix m, std::size_t pivot_column_limit = kAllColumns);

/// Exact rank by forward fraction-free elimination.
std::size_t rank_exact(IntegerMatrix m);
std::size_t rank_exact(const RationalMatrix& m);

/// Clears denominators row by row (each row scaled by the lcm of its denominators).
IntegerMatrix clear_denominators(const RationalMatrix& m);

struct LinearSolution {
  bool consistent = false;
  std::size_t rank_a = 0;
  std::size_t rank_augmented = 0;
  /// Particular solution with every free variable set to zero; empty when inconsistent.
  std::vector<Rational> x;
};

/// Solves A x = b exactly. Consistency is the Kronecker-Capelli rank test.
LinearSolution solve_exact(const IntegerMatrix& a, std::span<const Integer> b);
LinearSolution solve_exact(const RationalMatrix& a, std::span<const Rational> b);

/// X with A X = B for square nonsingular A. Throws RankDeficient when A is singular.
RationalMatrix solve_square(const IntegerMatrix& a, const IntegerMatrix& b);

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b);
IntegerMatrix transpose(const IntegerMatrix& m);
RationalMatrix to_rational(const IntegerMatrix& m);

// Modular helpers. The prime must be below 2^63.

inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;
/// Below 2^32 products fit in 64 bits, which makes elimination several times faster.
inline constexpr std::uint64_t kMersenne31 = (std::uint64_t{1} << 31) - 1;

struct ModularEchelon {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint64_t> reduced;  // row-major, pivots normalized to 1
  std::vector<std::size_t> pivot_columns;

  std::size_t rank() const noexcept { return pivot_columns.size(); }
  std::uint64_t at(std::size_t r, std::size_t c) const { return reduced[r * cols + c]; }
};

ModularEchelon rref_mod(const IntegerMatrix& m, std::uint64_t prime, std::size_t pivot_column_limit = kAllColumns);

/// Smallest-height rational n/d congruent to `residue` modulo `prime`, with
/// |n|, d <= sqrt(prime/2). Empty when no such fraction exists.
std::optional<Rational> rational_reconstruct(std::uint64_t residue, std::uint64_t prime);

}  // namespace koopcrypt
