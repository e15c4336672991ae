#include "koopcrypt/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "koopcrypt/errors.hpp"
#include "koopcrypt/numtheory.hpp"

namespace koopcrypt {

namespace {

using Poly = std::vector<Rational>;  // coefficient i multiplies x^i

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Poly poly_rem(Poly a, const Poly& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<unsigned long>(i));
  return d;
}

using IntPoly = std::vector<Integer>;

// Exact division by a monic integer polynomial.
IntPoly int_poly_div(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  IntPoly q(a.size() - db);
  for (std::size_t k = a.size(); k-- > db;) {
    const Integer f = a[k];
    q[k - db] = f;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= f * b[i];
  }
  return q;
}

IntPoly cyclotomic(std::uint64_t s) {
  IntPoly p(s + 1, 0);
  p[0] = -1;
  p[s] = 1;
  for (std::uint64_t d = 1; d < s; ++d) {
    if (s % d == 0) p = int_poly_div(std::move(p), cyclotomic(d));
  }
  return p;
}

bool is_dh_pattern(const std::vector<Rational>& a) {
  if (a.size() < 3) return false;
  if (a.front() != 1 || a[1] != -1 || a.back() != 1) return false;
  return std::all_of(a.begin() + 2, a.end() - 1, [](const Rational& v) { return sgn(v) == 0; });
}

bool is_shift_pattern(const std::vector<Rational>& a) {
  if (a.empty() || a.front() != 1) return false;
  return std::all_of(a.begin() + 1, a.end(), [](const Rational& v) { return sgn(v) == 0; });
}

std::complex<double> from_turn(const Rational& t) {
  return std::polar(1.0, 2 * std::numbers::pi * t.get_d());
}

std::vector<std::complex<double>> to_complex(std::span<const std::uint64_t> v) {
  std::vector<std::complex<double>> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](std::uint64_t x) { return std::complex<double>(double(x), 0.0); });
  return out;
}

}  // namespace

RationalMatrix CompanionSystem::matrix() const {
  const std::size_t n = dimension();
  RationalMatrix a(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = 1;
  for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = alpha[j];
  return a;
}

Rational CompanionSystem::predict(std::span<const Rational> window) const {
  if (window.size() != alpha.size()) throw DomainError("predict: window length must equal q+1");
  Rational next = 0;
  for (std::size_t j = 0; j < alpha.size(); ++j) next += alpha[j] * window[j];
  return next;
}

std::vector<Rational> CompanionSystem::characteristic_polynomial() const {
  Poly c(alpha.size() + 1);
  for (std::size_t j = 0; j < alpha.size(); ++j) c[j] = -alpha[j];
  c.back() = 1;
  return c;
}

bool CompanionSystem::reproduces(const Trajectory& traj, std::size_t steps) const {
  const std::size_t n = dimension();
  for (std::size_t k = 0; k + n <= steps; ++k) {
    if (!traj.covers(k + n)) break;
    Rational next = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(alpha[j]) != 0) next += alpha[j] * Rational(Integer(static_cast<unsigned long>(traj.at(k + j))));
    }
    if (next != Rational(Integer(static_cast<unsigned long>(traj.at(k + n))))) return false;
  }
  return true;
}

CompanionSystem dh_companion(std::uint64_t p) {
  if (p <= 3 || !is_prime(p)) throw DomainError("dh_companion: p must be a prime greater than 3");
  const std::size_t q = (p - 1) / 2;
  CompanionSystem cs;
  cs.alpha.assign(q + 1, Rational(0));
  cs.alpha[0] = 1;
  cs.alpha[1] = -1;
  cs.alpha[q] = 1;
  cs.scheme = Scheme::dh;
  cs.context = CompanionSystem::Context{p, 0};
  return cs;
}

CompanionSystem dh_companion_padded(std::uint64_t p, std::size_t q) {
  if (p <= 3 || !is_prime(p)) throw DomainError("dh_companion_padded: p must be a prime greater than 3");
  const std::size_t base = (p - 1) / 2;
  if (q < base) {
    throw InfeasibleDimension("dh_companion_padded: q = " + std::to_string(q) + " is below the minimum " +
                              std::to_string(base));
  }
  CompanionSystem cs;
  cs.alpha.assign(q + 1, Rational(0));
  cs.alpha[q - base] += 1;
  cs.alpha[q - base + 1] -= 1;
  cs.alpha[q] += 1;
  cs.scheme = Scheme::dh;
  cs.context = CompanionSystem::Context{p, 0};
  return cs;
}

CompanionSystem shift_companion(std::uint64_t period) {
  if (period == 0) throw DomainError("shift_companion: period must be positive");
  CompanionSystem cs;
  cs.alpha.assign(period, Rational(0));
  cs.alpha[0] = 1;
  cs.scheme = Scheme::learned;
  return cs;
}

CompanionSystem rsa_companion(std::uint64_t p1, std::uint64_t p2) {
  const CryptoInstance inst = CryptoInstance::rsa(p1, p2, 1);
  CompanionSystem cs = shift_companion(inst.modulus().carmichael());
  cs.scheme = Scheme::rsa;
  cs.context = CompanionSystem::Context{inst.modulus().value(), 0};
  return cs;
}

DimensionCheck check_dimension(std::uint64_t p, std::uint64_t m, std::size_t q) {
  const std::uint64_t zeta = period_length(m, p);
  std::vector<std::uint64_t> x(zeta);
  x[0] = 1;
  for (std::size_t k = 1; k < zeta; ++k) x[k] = mod_mul(x[k - 1], m, p);

  const std::size_t n = q + 1;
  IntegerMatrix ab(zeta, n + 1);
  for (std::size_t k = 0; k < zeta; ++k)
    for (std::size_t j = 0; j <= n; ++j) ab(k, j) = static_cast<unsigned long>(x[(k + j) % zeta]);

  DimensionCheck out;
  out.equations = zeta;

  auto exact_rank_a = [&] {
    IntegerMatrix a(zeta, n);
    for (std::size_t k = 0; k < zeta; ++k)
      for (std::size_t j = 0; j < n; ++j) a(k, j) = ab(k, j);
    return rank_exact(std::move(a));
  };

  // Modular ranks never exceed the rational ones, so a full modular rank is
  // exact. A modular solution is accepted only after exact verification.
  const ModularEchelon me = rref_mod(ab, kMersenne31);
  const bool rhs_pivot = !me.pivot_columns.empty() && me.pivot_columns.back() == n;
  const std::size_t rank_a_mod = rhs_pivot ? me.rank() - 1 : me.rank();
  if (me.rank() == n + 1) {
    out.feasible = false;
    out.rank_augmented = n + 1;
    out.rank_a = rank_a_mod == n ? n : exact_rank_a();
    return out;
  }
  if (!rhs_pivot) {
    std::vector<Rational> alpha(n, Rational(0));
    bool ok = true;
    for (std::size_t i = 0; i < me.rank() && ok; ++i) {
      auto v = rational_reconstruct(me.at(i, n), kMersenne31);
      if (!v) ok = false;
      else alpha[me.pivot_columns[i]] = *v;
    }
    if (ok) {
      Integer lcm = 1;
      for (const auto& v : alpha) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
      std::vector<Integer> scaled(n);
      for (std::size_t j = 0; j < n; ++j) scaled[j] = alpha[j].get_num() * (lcm / alpha[j].get_den());
      Integer acc;
      for (std::size_t k = 0; k < zeta && ok; ++k) {
        acc = 0;
        for (std::size_t j = 0; j < n; ++j) mpz_addmul(acc.get_mpz_t(), ab(k, j).get_mpz_t(), scaled[j].get_mpz_t());
        ok = acc == lcm * ab(k, n);
      }
    }
    if (ok) {
      out.feasible = true;
      out.alpha = std::move(alpha);
      out.rank_a = rank_a_mod == n ? n : exact_rank_a();
      out.rank_augmented = out.rank_a;
      return out;
    }
  }

  IntegerMatrix a(zeta, n);
  std::vector<Integer> b(zeta);
  for (std::size_t k = 0; k < zeta; ++k) {
    for (std::size_t j = 0; j < n; ++j) a(k, j) = ab(k, j);
    b[k] = ab(k, n);
  }
  LinearSolution sol = solve_exact(a, b);
  out.feasible = sol.consistent;
  out.rank_a = sol.rank_a;
  out.rank_augmented = sol.rank_augmented;
  out.alpha = std::move(sol.x);
  return out;
}

bool EigenSystem::is_real(std::size_t j) const {
  if (analytic()) {
    const Rational& t = turns.at(j);
    return sgn(t) == 0 || t == Rational(1, 2);
  }
  return std::abs(eigenvalues.at(j).imag()) < 1e-9;
}

EigenSystem eigensystem(const CompanionSystem& cs) {
  if (cs.alpha.empty()) throw DomainError("eigensystem: empty companion system");
  EigenSystem es;
  es.characteristic = cs.characteristic_polynomial();
  const std::size_t n = cs.dimension();

  if (is_dh_pattern(cs.alpha)) {
    const std::size_t q = cs.q();
    es.turns.emplace_back(0);
    for (std::size_t k = 0; k < q; ++k) {
      Rational t(static_cast<unsigned long>(2 * k + 1), static_cast<unsigned long>(2 * q));
      t.canonicalize();
      es.turns.push_back(t);
    }
  } else if (is_shift_pattern(cs.alpha)) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational t(static_cast<unsigned long>(j), static_cast<unsigned long>(n));
      t.canonicalize();
      es.turns.push_back(t);
    }
  }

  if (!es.turns.empty()) {
    for (std::size_t j = 0; j < es.turns.size(); ++j) {
      es.eigenvalues.push_back(from_turn(es.turns[j]));
      if (es.turns[j] == Rational(1, 2)) es.minus_one_index = j;
    }
    return es;
  }

  const Poly g = poly_gcd(es.characteristic, derivative(es.characteristic));
  if (g.size() > 1) throw NonDiagonalizable("eigensystem: characteristic polynomial has repeated roots");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i + 1 < n; ++i) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = 1.0;
  for (std::size_t j = 0; j < n; ++j) a(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(j)) = cs.alpha[j].get_d();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a, false);
  if (solver.info() != Eigen::Success) throw NonDiagonalizable("eigensystem: eigenvalue iteration did not converge");
  for (Eigen::Index j = 0; j < solver.eigenvalues().size(); ++j) es.eigenvalues.push_back(solver.eigenvalues()(j));
  // Deterministic order: by angle, then modulus.
  std::sort(es.eigenvalues.begin(), es.eigenvalues.end(), [](const auto& x, const auto& y) {
    const double ax = std::arg(x) < -1e-12 ? std::arg(x) + 2 * std::numbers::pi : std::max(0.0, std::arg(x));
    const double ay = std::arg(y) < -1e-12 ? std::arg(y) + 2 * std::numbers::pi : std::max(0.0, std::arg(y));
    if (std::abs(ax - ay) > 1e-12) return ax < ay;
    return std::abs(x) < std::abs(y);
  });
  for (std::size_t j = 0; j < es.eigenvalues.size(); ++j) {
    if (std::abs(es.eigenvalues[j] + 1.0) < 1e-9) es.minus_one_index = j;
  }
  return es;
}

bool is_exact_root(const EigenSystem& es, std::size_t j) {
  if (!es.analytic()) throw DomainError("is_exact_root: spectrum is not analytic");
  const Rational& t = es.turns.at(j);
  const std::uint64_t r = t.get_num().get_ui();
  const std::uint64_t s = t.get_den().get_ui();
  Poly reduced(s, Rational(0));
  for (std::size_t i = 0; i < es.characteristic.size(); ++i) reduced[(i * r) % s] += es.characteristic[i];
  const IntPoly phi = cyclotomic(s);
  Poly divisor(phi.begin(), phi.end());
  return poly_rem(std::move(reduced), divisor).empty();
}

std::vector<std::complex<double>> vandermonde_solve(std::span<const std::complex<double>> nodes,
                                                    std::span<const std::complex<double>> b) {
  if (nodes.size() != b.size()) throw DomainError("vandermonde_solve: dimension mismatch");
  std::vector<std::complex<double>> z(b.begin(), b.end());
  if (z.empty()) return z;
  const std::size_t n = z.size() - 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = n; i > k; --i) z[i] -= nodes[k] * z[i - 1];
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t i = k + 1; i <= n; ++i) z[i] /= nodes[i] - nodes[i - k - 1];
    for (std::size_t i = k; i < n; ++i) z[i] -= z[i + 1];
  }
  return z;
}

std::vector<std::complex<double>> transform_coordinates(const EigenSystem& es,
                                                        std::span<const std::complex<double>> z) {
  const std::size_t n = es.dimension();
  if (z.size() != n) {
    throw DomainError("transform_coordinates: lift has " + std::to_string(z.size()) + " components, spectrum has " +
                      std::to_string(n));
  }
  // Row j of V^{-1} holds the coefficients of the Lagrange polynomial
  // P(x) / ((x - mu_j) P'(mu_j)), where P is the characteristic polynomial.
  // Synthetic division by (x - mu_j) keeps every coefficient bounded for
  // nodes on the unit circle.
  std::vector<double> c(es.characteristic.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = es.characteristic[i].get_d();
  std::vector<std::complex<double>> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::complex<double> mu = es.eigenvalues[j];
    std::complex<double> b = c[n];
    std::complex<double> dot = b * z[n - 1];
    std::complex<double> derivative = b;  // Horner for P'(mu) = sum b_i mu^i
    for (std::size_t i = n - 1; i-- > 0;) {
      b = c[i + 1] + mu * b;
      dot += b * z[i];
      derivative = derivative * mu + b;
    }
    out[j] = dot / derivative;
  }
  return out;
}

std::vector<std::complex<double>> transform_coordinates(const EigenSystem& es, const ValueListLift& z) {
  const auto v = to_complex(z.components());
  return transform_coordinates(es, v);
}

std::vector<std::complex<double>> transform_coordinates(const EigenSystem& es, const UnitCircleLift& z) {
  const auto v = z.values();
  return transform_coordinates(es, v);
}

const char* to_string(Parity parity) noexcept {
  switch (parity) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    case Parity::unavailable: return "unavailable";
  }
  return "unknown";
}

Parity parity_test(const EigenSystem& es, std::span<const std::complex<double>> z0_tilde,
                   std::span<const std::complex<double>> ze_tilde) {
  if (!es.minus_one_index) return Parity::unavailable;
  const std::size_t k = *es.minus_one_index;
  if (z0_tilde.size() != es.dimension() || ze_tilde.size() != es.dimension()) {
    throw DomainError("parity_test: coordinate dimension mismatch");
  }
  double scale = 0;
  for (const auto& v : z0_tilde) scale = std::max(scale, std::abs(v));
  if (std::abs(z0_tilde[k]) <= 1e-9 * std::max(scale, 1.0)) {
    throw DegenerateCoordinate("parity_test: the -1 mode is not excited");
  }
  return (ze_tilde[k] / z0_tilde[k]).real() > 0 ? Parity::even : Parity::odd;
}

}  // namespace koopcrypt
