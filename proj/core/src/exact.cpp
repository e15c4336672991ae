#include "koopcrypt/exact.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "koopcrypt/errors.hpp"
#include "int128.hpp"
#include "koopcrypt/numtheory.hpp"

namespace koopcrypt {

using detail::i128;
using detail::u128;

namespace {

// Returns the row index (>= from) of a nonzero entry in column c, preferring
// the entry of smallest bit size to slow coefficient growth.
std::optional<std::size_t> find_pivot(const IntegerMatrix& m, std::size_t from, std::size_t c) {
  std::optional<std::size_t> best;
  std::size_t best_size = 0;
  for (std::size_t i = from; i < m.rows(); ++i) {
    const mpz_srcptr v = m(i, c).get_mpz_t();
    if (mpz_sgn(v) == 0) continue;
    const std::size_t size = mpz_sizeinbase(v, 2);
    if (!best || size < best_size) {
      best = i;
      best_size = size;
      if (size == 1) break;
    }
  }
  return best;
}

}  // namespace

Echelon fraction_free_rref(IntegerMatrix m, std::size_t pivot_column_limit) {
  Echelon out;
  const std::size_t limit = std::min(pivot_column_limit, m.cols());
  Integer den = 1;
  Integer factor;
  mpz_class tmp;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < m.rows(); ++c) {
    const auto pivot_row = find_pivot(m, r, c);
    if (!pivot_row) continue;
    m.swap_rows(r, *pivot_row);
    const Integer pivot = m(r, c);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      factor = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j == c) continue;
        mpz_ptr a = m(i, j).get_mpz_t();
        mpz_mul(tmp.get_mpz_t(), pivot.get_mpz_t(), a);
        mpz_submul(tmp.get_mpz_t(), factor.get_mpz_t(), m(r, j).get_mpz_t());
        mpz_divexact(a, tmp.get_mpz_t(), den.get_mpz_t());
      }
      m(i, c) = 0;
    }
    den = pivot;
    out.pivot_columns.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  out.denominator = out.pivot_columns.empty() ? Integer(1) : den;
  return out;
}

std::size_t rank_exact(IntegerMatrix m) {
  Integer den = 1;
  mpz_class tmp;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    const auto pivot_row = find_pivot(m, r, c);
    if (!pivot_row) continue;
    m.swap_rows(r, *pivot_row);
    const Integer pivot = m(r, c);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const Integer factor = m(i, c);
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        mpz_ptr a = m(i, j).get_mpz_t();
        mpz_mul(tmp.get_mpz_t(), pivot.get_mpz_t(), a);
        mpz_submul(tmp.get_mpz_t(), factor.get_mpz_t(), m(r, j).get_mpz_t());
        mpz_divexact(a, tmp.get_mpz_t(), den.get_mpz_t());
      }
      m(i, c) = 0;
    }
    den = pivot;
    ++r;
  }
  return r;
}

IntegerMatrix clear_denominators(const RationalMatrix& m) {
  IntegerMatrix out(m.rows(), m.cols());
  Integer scale;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    scale = 1;
    for (const Rational& v : m.row(i)) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& v = m(i, j);
      out(i, j) = v.get_num() * (scale / v.get_den());
    }
  }
  return out;
}

std::size_t rank_exact(const RationalMatrix& m) { return rank_exact(clear_denominators(m)); }

LinearSolution solve_exact(const IntegerMatrix& a, std::span<const Integer> b) {
  if (b.size() != a.rows()) throw DomainError("solve_exact: right-hand side length mismatch");
  IntegerMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const Echelon e = fraction_free_rref(std::move(aug));
  LinearSolution sol;
  sol.rank_augmented = e.rank();
  const bool rhs_pivot = !e.pivot_columns.empty() && e.pivot_columns.back() == a.cols();
  sol.rank_a = rhs_pivot ? e.rank() - 1 : e.rank();
  sol.consistent = !rhs_pivot;
  if (!sol.consistent) return sol;
  sol.x.assign(a.cols(), Rational(0));
  for (std::size_t k = 0; k < e.rank(); ++k) {
    Rational v(e.reduced(k, a.cols()), e.denominator);
    v.canonicalize();
    sol.x[e.pivot_columns[k]] = v;
  }
  return sol;
}

LinearSolution solve_exact(const RationalMatrix& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) throw DomainError("solve_exact: right-hand side length mismatch");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const IntegerMatrix scaled = clear_denominators(aug);
  IntegerMatrix lhs(a.rows(), a.cols());
  std::vector<Integer> rhs(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) lhs(i, j) = scaled(i, j);
    rhs[i] = scaled(i, a.cols());
  }
  return solve_exact(lhs, rhs);
}

RationalMatrix solve_square(const IntegerMatrix& a, const IntegerMatrix& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) throw DomainError("solve_square: dimension mismatch");
  IntegerMatrix aug(n, n + b.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
  }
  const Echelon e = fraction_free_rref(std::move(aug), n);
  if (e.rank() < n) throw RankDeficient("solve_square: matrix is singular");
  RationalMatrix x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Rational v(e.reduced(i, n + j), e.denominator);
      v.canonicalize();
      x(i, j) = std::move(v);
    }
  }
  return x;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("multiply: inner dimension mismatch");
  RationalMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

IntegerMatrix multiply(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("multiply: inner dimension mismatch");
  IntegerMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        mpz_addmul(out(i, j).get_mpz_t(), a(i, k).get_mpz_t(), b(k, j).get_mpz_t());
    }
  return out;
}

IntegerMatrix transpose(const IntegerMatrix& m) {
  IntegerMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

namespace {

template <class MulMod>
void rref_mod_impl(ModularEchelon& e, std::uint64_t prime, std::size_t limit, MulMod mulmod) {
  auto at = [&](std::size_t r, std::size_t c) -> std::uint64_t& { return e.reduced[r * e.cols + c]; };
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit && r < e.rows; ++c) {
    std::size_t pivot = r;
    while (pivot < e.rows && at(pivot, c) == 0) ++pivot;
    if (pivot == e.rows) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < e.cols; ++j) std::swap(at(pivot, j), at(r, j));
    const std::uint64_t inv = mod_pow(at(r, c), prime - 2, prime);
    for (std::size_t j = c; j < e.cols; ++j) at(r, j) = mulmod(at(r, j), inv);
    for (std::size_t i = 0; i < e.rows; ++i) {
      if (i == r || at(i, c) == 0) continue;
      const std::uint64_t f = prime - at(i, c);
      for (std::size_t j = c; j < e.cols; ++j) {
        const std::uint64_t v = at(r, j);
        if (v == 0) continue;
        std::uint64_t& a = at(i, j);
        a += mulmod(f, v);
        if (a >= prime) a -= prime;
      }
    }
    e.pivot_columns.push_back(c);
    ++r;
  }
}

}  // namespace

ModularEchelon rref_mod(const IntegerMatrix& m, std::uint64_t prime, std::size_t pivot_column_limit) {
  if (prime >= (std::uint64_t{1} << 63)) throw DomainError("rref_mod: prime must be below 2^63");
  ModularEchelon e;
  e.rows = m.rows();
  e.cols = m.cols();
  e.reduced.resize(e.rows * e.cols);
  for (std::size_t i = 0; i < e.rows; ++i)
    for (std::size_t j = 0; j < e.cols; ++j) e.reduced[i * e.cols + j] = mpz_fdiv_ui(m(i, j).get_mpz_t(), prime);
  const std::size_t limit = std::min(pivot_column_limit, e.cols);
  if (prime <= (std::uint64_t{1} << 32)) {
    rref_mod_impl(e, prime, limit, [prime](std::uint64_t a, std::uint64_t b) { return a * b % prime; });
  } else {
    rref_mod_impl(e, prime, limit, [prime](std::uint64_t a, std::uint64_t b) { return mod_mul(a, b, prime); });
  }
  return e;
}

std::optional<Rational> rational_reconstruct(std::uint64_t residue, std::uint64_t prime) {
  // bound = floor(sqrt(prime / 2))
  auto bound = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(prime / 2)));
  while (static_cast<u128>(bound) * bound > prime / 2) --bound;
  while (static_cast<u128>(bound + 1) * (bound + 1) <= prime / 2) ++bound;
  i128 r0 = prime, r1 = residue % prime;
  i128 t0 = 0, t1 = 1;
  while (r1 > static_cast<i128>(bound)) {
    const i128 q = r0 / r1;
    r0 = std::exchange(r1, r0 - q * r1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  const i128 d = t1 < 0 ? -t1 : t1;
  if (d == 0 || d > static_cast<i128>(bound)) return std::nullopt;
  const i128 n = t1 < 0 ? -r1 : r1;
  Rational out(Integer(static_cast<long>(n)), Integer(static_cast<long>(d)));
  if (gcd(out.get_num(), Integer(static_cast<long>(d))) != 1) return std::nullopt;
  out.canonicalize();
  return out;
}

}  // namespace koopcrypt
