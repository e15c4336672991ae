#include <doctest.h>

#include <algorithm>
#include <complex>
#include <numbers>
#include <random>

#include <koopcrypt/errors.hpp>
#include <koopcrypt/spectral.hpp>

#include "oracles.hpp"

using namespace koopcrypt;
using cplx = std::complex<double>;

namespace {

std::vector<Rational> dh_alpha(std::size_t q) {
  std::vector<Rational> a(q + 1, Rational(0));
  a[0] = 1;
  a[1] = -1;
  a[q] = 1;
  return a;
}

std::vector<Rational> shift_alpha(std::size_t n) {
  std::vector<Rational> a(n, Rational(0));
  a[0] = 1;
  return a;
}

std::vector<cplx> eigenvector(const EigenSystem& es, std::size_t j) {
  std::vector<cplx> v(es.dimension());
  cplx power = 1;
  for (auto& x : v) {
    x = power;
    power *= es.eigenvalues[j];
  }
  return v;
}

std::vector<cplx> orbit(std::uint64_t x, std::uint64_t m, std::uint64_t p, std::size_t n) {
  std::vector<cplx> z;
  for (auto v : oracle::orbit(m, p, x, n - 1)) z.emplace_back(static_cast<double>(v));
  return z;
}

}  // namespace

TEST_CASE("dh_companion") {
  const auto cs = dh_companion(19);
  CHECK(cs.q() == 9);
  CHECK(cs.alpha == dh_alpha(9));
  CHECK(cs.scheme == Scheme::dh);
  CHECK(dh_companion(5).alpha == std::vector<Rational>{1, -1, 1});
  const auto c23 = dh_companion(23);
  CHECK(c23.alpha == dh_alpha(11));
  for (auto m : oracle::generators(23)) CHECK(c23.reproduces(simulate(m, 23, 1, 44), 44));
  CHECK_THROWS_AS(dh_companion(3), DomainError);
  CHECK_THROWS_AS(dh_companion(21), DomainError);
}

TEST_CASE("companion matrix and characteristic polynomial") {
  const auto cs = dh_companion(5);
  const RationalMatrix a = cs.matrix();
  CHECK(a == RationalMatrix{{0, 1, 0}, {0, 0, 1}, {1, -1, 1}});
  CHECK(cs.characteristic_polynomial() == std::vector<Rational>{-1, 1, -1, 1});
  const std::vector<Rational> window{1, 2, 4};
  CHECK(cs.predict(window) == 3);  // 2^3 mod 5
  CHECK_THROWS_AS(cs.predict(std::vector<Rational>{1, 2}), DomainError);
}

TEST_CASE("dh_companion_padded") {
  CHECK(dh_companion_padded(19, 9).alpha == dh_companion(19).alpha);
  const auto cs = dh_companion_padded(19, 17);
  for (std::size_t j = 0; j <= 17; ++j) {
    const Rational expected = j == 8 ? 1 : j == 9 ? -1 : j == 17 ? 1 : 0;
    CHECK(cs.alpha[j] == expected);
  }
  const auto c11 = dh_companion_padded(11, 7);
  CHECK(c11.alpha == std::vector<Rational>{0, 0, 1, -1, 0, 0, 0, 1});
  for (auto m : oracle::generators(11)) CHECK(c11.reproduces(simulate(m, 11, 1, 30), 30));
  CHECK_THROWS_AS(dh_companion_padded(19, 8), InfeasibleDimension);
}

TEST_CASE("padding to p-2 agrees with the pure shift") {
  for (std::uint64_t p : {7ULL, 19ULL, 23ULL}) {
    const auto padded = dh_companion_padded(p, p - 2);
    const auto shift = shift_companion(p - 1);
    for (auto m : oracle::generators(p)) {
      const auto traj = simulate(m, p, 1, 3 * (p - 1));
      CHECK(padded.reproduces(traj, traj.size()));
      CHECK(shift.reproduces(traj, traj.size()));
    }
  }
}

TEST_CASE("rsa_companion") {
  const auto cs = rsa_companion(3, 5);
  CHECK(cs.q() == 3);
  CHECK(cs.alpha == shift_alpha(4));
  CHECK(cs.scheme == Scheme::rsa);
  CHECK(rsa_companion(3, 7).alpha == shift_alpha(6));
  CHECK(rsa_companion(5, 11).q() == 19);
  CHECK(rsa_companion(5, 11).alpha == shift_alpha(20));
  CHECK_THROWS_AS(rsa_companion(5, 5), DomainError);
}

TEST_CASE("RSA trajectories repeat after the Carmichael period") {
  const auto primes = oracle::odd_primes(3, 40);
  for (auto p1 : primes)
    for (auto p2 : primes) {
      if (p1 >= p2) continue;
      const std::uint64_t p = p1 * p2;
      const auto cs = rsa_companion(p1, p2);
      for (std::uint64_t m = 1; m < p; ++m) {
        if (std::gcd(m, p) != 1) continue;
        REQUIRE(cs.reproduces(simulate(m, p, 1, 2 * cs.dimension()), 2 * cs.dimension()));
      }
    }
}

TEST_CASE("check_dimension") {
  const auto below = check_dimension(19, 2, 8);
  CHECK_FALSE(below.feasible);
  CHECK(below.alpha.empty());
  CHECK(below.rank_augmented == 10);
  CHECK(below.rank_a == 9);

  const auto at = check_dimension(19, 2, 9);
  CHECK(at.feasible);
  CHECK(at.alpha == dh_alpha(9));
  CHECK(at.rank_a == at.rank_augmented);

  const auto rsa = check_dimension(15, 4, 1);
  CHECK(rsa.feasible);
  CHECK(rsa.alpha == std::vector<Rational>{1, 0});

  CHECK_THROWS_AS(check_dimension(15, 5, 1), DomainError);
}

TEST_CASE("check_dimension agrees with the oracle rank test") {
  for (std::uint64_t p : {7ULL, 11ULL, 13ULL, 15ULL, 21ULL, 35ULL})
    for (std::uint64_t m = 1; m < p; ++m) {
      if (std::gcd(m, p) != 1) continue;
      const std::uint64_t zeta = oracle::order(m, p);
      const auto x = oracle::orbit(m, p, 1, 2 * zeta + p);
      for (std::size_t q = 0; q < p; ++q) {
        oracle::QMatrix a, ab;
        for (std::size_t k = 0; k < zeta; ++k) {
          std::vector<mpq_class> row;
          for (std::size_t j = 0; j <= q; ++j) row.push_back(static_cast<unsigned long>(x[(k + j) % zeta]));
          a.push_back(row);
          row.push_back(static_cast<unsigned long>(x[(k + q + 1) % zeta]));
          ab.push_back(row);
        }
        const bool feasible = oracle::rank(a) == oracle::rank(ab);
        const auto dc = check_dimension(p, m, q);
        REQUIRE(dc.feasible == feasible);
        REQUIRE(dc.rank_augmented == oracle::rank(ab));
        if (!feasible) continue;
        // The returned alpha must satisfy every equation.
        for (std::size_t k = 0; k < zeta; ++k) {
          Rational s = 0;
          for (std::size_t j = 0; j <= q; ++j) s += dc.alpha[j] * static_cast<unsigned long>(x[k + j]);
          REQUIRE(s == static_cast<unsigned long>(x[k + q + 1]));
        }
      }
    }
}

TEST_CASE("eigensystem of the DH companion") {
  const auto es = eigensystem(dh_companion(19));
  REQUIRE(es.dimension() == 10);
  CHECK(es.analytic());
  CHECK(es.turns[0] == 0);
  CHECK(es.eigenvalues[0] == cplx(1, 0));
  for (std::size_t k = 0; k < 9; ++k) {
    const cplx expected = std::polar(1.0, std::numbers::pi * static_cast<double>(2 * k + 1) / 9);
    CHECK(std::abs(es.eigenvalues[k + 1] - expected) < 1e-14);
  }
  REQUIRE(es.minus_one_index == 5U);
  CHECK(es.turns[5] == Rational(1, 2));
  CHECK(std::abs(es.eigenvalues[5] + 1.0) < 1e-15);
  CHECK(es.is_real(0));
  CHECK(es.is_real(5));
  CHECK_FALSE(es.is_real(1));
}

TEST_CASE("eigensystem of shift companions") {
  const auto es = eigensystem(rsa_companion(3, 5));
  REQUIRE(es.dimension() == 4);
  const cplx expected[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(es.eigenvalues[j] - expected[j]) < 1e-15);
  CHECK(es.minus_one_index == 2U);

  CompanionSystem scalar;
  scalar.alpha = {Rational(1)};
  const auto one = eigensystem(scalar);
  REQUIRE(one.dimension() == 1);
  CHECK(one.eigenvalues[0] == cplx(1, 0));
  CHECK_FALSE(one.minus_one_index.has_value());
}

TEST_CASE("analytic eigenvalues are exact, distinct and unimodular") {
  std::vector<CompanionSystem> systems;
  for (auto p : oracle::odd_primes(5, 200)) systems.push_back(dh_companion(p));
  for (std::uint64_t n = 1; n <= 60; ++n) systems.push_back(shift_companion(n));
  for (const auto& cs : systems) {
    const auto es = eigensystem(cs);
    REQUIRE(es.dimension() == cs.dimension());
    for (std::size_t j = 0; j < es.dimension(); ++j) {
      REQUIRE(is_exact_root(es, j));
      REQUIRE(std::abs(std::abs(es.eigenvalues[j]) - 1.0) < 1e-14);
      for (std::size_t i = 0; i < j; ++i) REQUIRE(es.turns[i] != es.turns[j]);
    }
    // The characteristic polynomial evaluates to zero in floating point too.
    for (std::size_t j = 0; j < es.dimension(); ++j) {
      cplx v = 0;
      for (std::size_t i = es.characteristic.size(); i-- > 0;) v = v * es.eigenvalues[j] + es.characteristic[i].get_d();
      REQUIRE(std::abs(v) < 1e-10 * static_cast<double>(es.dimension()));
    }
  }
}

TEST_CASE("is_exact_root rejects a turn that is not a root") {
  auto es = eigensystem(dh_companion(19));
  es.turns[1] = Rational(1, 9);
  CHECK_FALSE(is_exact_root(es, 1));
  es.turns[1] = Rational(1, 18);
  CHECK(is_exact_root(es, 1));
}

TEST_CASE("eigensystem falls back to numeric roots and detects repeated roots") {
  // Padding by one adds a simple zero root; padding by two repeats it.
  const auto es = eigensystem(dh_companion_padded(19, 10));
  CHECK_FALSE(es.analytic());
  REQUIRE(es.dimension() == 11);
  const auto zero = std::count_if(es.eigenvalues.begin(), es.eigenvalues.end(),
                                  [](cplx v) { return std::abs(v) < 1e-9; });
  CHECK(zero == 1);
  REQUIRE(es.minus_one_index.has_value());
  CHECK(std::abs(es.eigenvalues[*es.minus_one_index] + 1.0) < 1e-9);
  CHECK_THROWS_AS(eigensystem(dh_companion_padded(19, 11)), NonDiagonalizable);

  CompanionSystem doubled;
  doubled.alpha = {Rational(-1), Rational(2)};  // (mu - 1)^2
  CHECK_THROWS_AS(eigensystem(doubled), NonDiagonalizable);
}

TEST_CASE("transform_coordinates") {
  const auto es = eigensystem(dh_companion(19));
  const std::size_t n = es.dimension();

  const auto e0 = transform_coordinates(es, eigenvector(es, 0));
  CHECK(std::abs(e0[0] - 1.0) < 1e-12);
  for (std::size_t j = 1; j < n; ++j) CHECK(std::abs(e0[j]) < 1e-12);

  std::vector<cplx> sum(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto v = eigenvector(es, j);
    for (std::size_t i = 0; i < n; ++i) sum[i] += v[i];
  }
  for (const auto& v : transform_coordinates(es, sum)) CHECK(std::abs(v - 1.0) < 1e-12);

  const auto lifted = transform_coordinates(es, lift_value_list(simulate(2, 19, 1, 18), 0, 9));
  for (const auto& v : lifted) CHECK(std::abs(v) > 1e-6);

  CHECK_THROWS_AS(transform_coordinates(es, std::vector<cplx>(3)), DomainError);
}

TEST_CASE("transform_coordinates matches a dense solve") {
  for (std::uint64_t p : {5ULL, 19ULL, 97ULL}) {
    for (const auto& cs : {dh_companion(p), shift_companion(p - 1)}) {
      const auto es = eigensystem(cs);
      const std::size_t n = es.dimension();
      std::vector<std::vector<cplx>> v(n, std::vector<cplx>(n));
      for (std::size_t j = 0; j < n; ++j) {
        const auto col = eigenvector(es, j);
        for (std::size_t i = 0; i < n; ++i) v[i][j] = col[i];
      }
      const auto z = orbit(1, oracle::generators(p).back(), p, n);
      const auto expected = oracle::solve(v, z);
      const auto got = transform_coordinates(es, z);
      for (std::size_t j = 0; j < n; ++j) REQUIRE(std::abs(got[j] - expected[j]) < 1e-8 * static_cast<double>(p));
    }
  }
}

TEST_CASE("vandermonde_solve inverts V on well-conditioned nodes") {
  const auto es = eigensystem(shift_companion(8));
  const std::vector<cplx> b{1, 2, 3, 4, 5, 6, 7, 8};
  const auto x = vandermonde_solve(es.eigenvalues, b);
  for (std::size_t i = 0; i < b.size(); ++i) {
    cplx s = 0;
    for (std::size_t j = 0; j < b.size(); ++j) s += std::pow(es.eigenvalues[j], static_cast<int>(i)) * x[j];
    CHECK(std::abs(s - b[i]) < 1e-12);
  }
  const auto lagrange = transform_coordinates(es, b);
  for (std::size_t j = 0; j < b.size(); ++j) CHECK(std::abs(lagrange[j] - x[j]) < 1e-12);
  CHECK_THROWS_AS(vandermonde_solve(es.eigenvalues, std::vector<cplx>(2)), DomainError);
}

TEST_CASE("recover_exponent") {
  const auto r = recover_exponent(19, 2, 13);
  CHECK(r.exponent == 5);
  CHECK(r.residue_class_modulus == 18);
  CHECK(r.dimension == 10);
  CHECK(r.scheme == Scheme::dh);
  CHECK(r.verified);
  CHECK(r.parity == Parity::odd);
  CHECK(std::any_of(r.diagnostics.begin(), r.diagnostics.end(), [](const auto& d) { return d.used; }));
  for (const auto& d : r.diagnostics)
    if (d.used) CHECK(std::find(d.candidates.begin(), d.candidates.end(), 5) != d.candidates.end());

  const auto one = recover_exponent(19, 2, 1);
  CHECK(one.exponent == 0);
  CHECK(one.parity == Parity::even);

  CHECK(recover_exponent(97, 5, oracle::pow(5, 71, 97)).exponent == 71);

  CHECK_THROWS_AS(recover_exponent(19, 2, 0), DomainError);
  CHECK_THROWS_AS(recover_exponent(15, 5, 1), DomainError);
}

TEST_CASE("recover_exponent is exact for every generator and exponent") {
  for (auto p : oracle::odd_primes(3, 60))
    for (auto m : oracle::generators(p))
      for (std::uint64_t e = 1; e + 1 < p; ++e) {
        const auto r = recover_exponent(p, m, oracle::pow(m, e, p));
        REQUIRE(r.exponent == e);
        if (r.parity != Parity::unavailable) REQUIRE((r.parity == Parity::odd) == (e % 2 == 1));
      }
}

TEST_CASE("recover_exponent handles non-generators and composite moduli") {
  for (std::uint64_t p : {19ULL, 15ULL, 21ULL, 35ULL})
    for (std::uint64_t m = 2; m < p; ++m) {
      if (std::gcd(m, p) != 1) continue;
      const std::uint64_t zeta = oracle::order(m, p);
      for (std::uint64_t e = 0; e < zeta; ++e) {
        try {
          const auto r = recover_exponent(p, m, oracle::pow(m, e, p));
          REQUIRE(r.exponent == e);
          REQUIRE(r.residue_class_modulus == zeta);
        } catch (const InsufficientSpectrum&) {
          // Only an orbit of period 1 leaves every excited mode real.
          REQUIRE(zeta == 1);
        }
      }
    }
}

TEST_CASE("ciphertexts outside the orbit are reported as failures") {
  // 4 generates the quadratic residues mod 19; 2 is not one of them.
  CHECK_THROWS_AS(recover_exponent(19, 4, 2), RecoveryFailure);
}

TEST_CASE("recover_rsa_key") {
  const auto a = recover_rsa_key(3, 5, 3);
  CHECK(a.exponent % 4 == 3);
  CHECK(a.verified);
  REQUIRE(a.verified_key);
  CHECK(*a.verified_key % 4 == 3);
  CHECK(a.probes.size() == 2);
  CHECK(a.parity == Parity::odd);
  CHECK(eigensystem(rsa_companion(3, 5)).minus_one_index == 2U);

  CHECK(recover_rsa_key(3, 5, 1).exponent % 4 == 1);

  const auto c = recover_rsa_key(5, 11, 23);
  CHECK(c.exponent % c.residue_class_modulus == 7 % c.residue_class_modulus);
  REQUIRE(c.verified_key);
  for (std::uint64_t m = 1; m < 55; ++m)
    if (std::gcd(m, 55ULL) == 1) REQUIRE(oracle::pow(oracle::pow(m, 23, 55), *c.verified_key, 55) == m);

  CHECK_THROWS_AS(recover_rsa_key(3, 5, 2), KeyError);
}

TEST_CASE("parity_test") {
  const auto es = eigensystem(dh_companion(19));
  const auto z0 = transform_coordinates(es, orbit(1, 2, 19, 10));
  CHECK(parity_test(es, z0, transform_coordinates(es, orbit(13, 2, 19, 10))) == Parity::odd);
  CHECK(parity_test(es, z0, z0) == Parity::even);
  CHECK(parity_test(eigensystem(dh_companion(17)), std::vector<cplx>(9, 1), std::vector<cplx>(9, 1)) ==
        Parity::unavailable);

  std::vector<cplx> dead = z0;
  dead[5] = 0;
  CHECK_THROWS_AS(parity_test(es, dead, z0), DegenerateCoordinate);
  CHECK(std::string(to_string(Parity::unavailable)) == "unavailable");
}

TEST_CASE("exponent candidates are invariant under a common scale") {
  const auto es = eigensystem(dh_companion(97));
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> u(-3, 3);
  for (std::uint64_t e : {1ULL, 2ULL, 47ULL, 48ULL, 95ULL}) {
    const auto z0 = transform_coordinates(es, orbit(1, 5, 97, es.dimension()));
    const auto ze = transform_coordinates(es, orbit(oracle::pow(5, e, 97), 5, 97, es.dimension()));
    const auto base = exponent_candidates(es, z0, ze, 96);
    REQUIRE(std::find(base.begin(), base.end(), e) != base.end());
    for (int trial = 0; trial < 5; ++trial) {
      const cplx s(u(rng), u(rng));
      std::vector<cplx> a(z0), b(ze);
      for (auto& v : a) v *= s;
      for (auto& v : b) v *= s;
      REQUIRE(exponent_candidates(es, a, b, 96) == base);
      REQUIRE(parity_test(es, a, b) == parity_test(es, z0, ze));
    }
  }
}

TEST_CASE("exponent candidates through a numeric spectrum") {
  const auto es = eigensystem(dh_companion_padded(19, 10));
  REQUIRE_FALSE(es.analytic());
  const auto z0 = transform_coordinates(es, orbit(1, 2, 19, 11));
  for (std::uint64_t e = 0; e < 18; ++e) {
    const auto ze = transform_coordinates(es, orbit(oracle::pow(2, e, 19), 2, 19, 11));
    const auto c = exponent_candidates(es, z0, ze, 18);
    REQUIRE(std::find(c.begin(), c.end(), e) != c.end());
  }
}

TEST_CASE("exponent candidates need an excited informative mode") {
  const auto es = eigensystem(dh_companion(19));
  std::vector<cplx> only_one(10, 0);
  only_one[0] = 1;
  CHECK_THROWS_AS(exponent_candidates(es, only_one, only_one, 18), InsufficientSpectrum);
  CHECK_THROWS_AS(exponent_candidates(es, only_one, only_one, 0), DomainError);
}
