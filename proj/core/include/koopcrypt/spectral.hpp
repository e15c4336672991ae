#pragma once

// Companion-matrix linear representations of x -> m x mod p, their
// eigendecompositions, and exponent/key recovery from eigen-coordinates.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "koopcrypt/dynsys.hpp"
#include "koopcrypt/exact.hpp"
#include "koopcrypt/lifting.hpp"

namespace koopcrypt {

/// x_{k+q+1} = sum_j alpha_j x_{k+j}: companion matrix with a shifted identity
/// above and alpha as its last row.
struct CompanionSystem {
  struct Context {
    std::uint64_t modulus = 0;
    std::uint64_t multiplier = 0;  // 0 when the system holds for every multiplier
    friend bool operator==(const Context&, const Context&) = default;
  };

  std::vector<Rational> alpha;
  Scheme scheme = Scheme::learned;
  std::optional<Context> context;

  std::size_t q() const noexcept { return alpha.size() - 1; }
  std::size_t dimension() const noexcept { return alpha.size(); }

  RationalMatrix matrix() const;
  /// Next sample from the window (x_k, ..., x_{k+q}).
  Rational predict(std::span<const Rational> window) const;
  /// Monic characteristic polynomial, coefficients c_0..c_{q+1}.
  std::vector<Rational> characteristic_polynomial() const;
  /// True iff the recurrence holds on every readable window of the trajectory up to `steps`.
  bool reproduces(const Trajectory& traj, std::size_t steps) const;
};

/// q = (p-1)/2, alpha = [1, -1, 0, ..., 0, 1]. Requires a prime p > 3.
CompanionSystem dh_companion(std::uint64_t p);
/// alpha_{q-q~} = 1, alpha_{q-q~+1} = -1, alpha_q = 1 for q >= q~ = (p-1)/2.
CompanionSystem dh_companion_padded(std::uint64_t p, std::size_t q);
/// q = lambda(p1 p2) - 1, alpha = [1, 0, ..., 0].
CompanionSystem rsa_companion(std::uint64_t p1, std::uint64_t p2);
/// Pure cyclic shift of the given period.
CompanionSystem shift_companion(std::uint64_t period);

struct DimensionCheck {
  bool feasible = false;
  std::vector<Rational> alpha;  // empty when infeasible
  std::size_t rank_a = 0;
  std::size_t rank_augmented = 0;
  std::size_t equations = 0;
};

/// Kronecker-Capelli test on the periodic Hankel system whose row k is
/// (x_k .. x_{k+q} | x_{k+q+1}), k = 0..zeta-1, with x_0 = 1.
DimensionCheck check_dimension(std::uint64_t p, std::uint64_t m, std::size_t q);

struct EigenSystem {
  std::vector<std::complex<double>> eigenvalues;
  /// angle / 2pi in [0, 1) for analytic spectra, empty otherwise.
  std::vector<Rational> turns;
  std::optional<std::size_t> minus_one_index;
  std::vector<Rational> characteristic;

  std::size_t dimension() const noexcept { return eigenvalues.size(); }
  bool analytic() const noexcept { return !turns.empty(); }
  bool is_real(std::size_t j) const;
};

/// DH pattern -> {1} + roots of mu^q + 1; shift pattern -> (q+1)-th roots of
/// unity; anything else is solved numerically. Throws NonDiagonalizable on
/// repeated roots.
EigenSystem eigensystem(const CompanionSystem& cs);

/// Exact test that eigenvalue j is a root of the characteristic polynomial
/// (cyclotomic reduction). Only defined for analytic spectra.
bool is_exact_root(const EigenSystem& es, std::size_t j);

/// z~ = V^{-1} z with V(i, j) = mu_j^i, through the Lagrange basis of the
/// characteristic polynomial (O(n^2), no matrix is formed).
std::vector<std::complex<double>> transform_coordinates(const EigenSystem& es,
                                                        std::span<const std::complex<double>> z);
std::vector<std::complex<double>> transform_coordinates(const EigenSystem& es, const ValueListLift& z);
std::vector<std::complex<double>> transform_coordinates(const EigenSystem& es, const UnitCircleLift& z);

/// Bjorck-Pereyra solve of V x = b with V(i, j) = nodes_j^i.
std::vector<std::complex<double>> vandermonde_solve(std::span<const std::complex<double>> nodes,
                                                    std::span<const std::complex<double>> b);

enum class Parity { even, odd, unavailable };
const char* to_string(Parity parity) noexcept;

/// Reads the sign of z~_e / z~_0 at the eigenvalue -1.
Parity parity_test(const EigenSystem& es, std::span<const std::complex<double>> z0_tilde,
                   std::span<const std::complex<double>> ze_tilde);

struct EigenDiagnostic {
  std::size_t index = 0;
  std::complex<double> eigenvalue;
  std::optional<Rational> turn;
  bool excited = false;
  bool used = false;
  std::complex<double> ratio;
  /// e = residue (mod modulus) on the exact path.
  std::optional<std::uint64_t> residue;
  std::optional<std::uint64_t> modulus;
  std::vector<std::uint64_t> candidates;
};

struct RecoveryResult {
  std::uint64_t exponent = 0;
  Parity parity = Parity::unavailable;
  std::uint64_t residue_class_modulus = 1;
  std::size_t dimension = 0;
  Scheme scheme = Scheme::dh;
  std::vector<EigenDiagnostic> diagnostics;
  bool verified = false;
  /// RSA only: a key in the coset exponent + t * residue_class_modulus that
  /// decrypted both probes.
  std::optional<std::uint64_t> verified_key;
  std::vector<std::uint64_t> probes;
};

/// Candidate exponents in [0, period) from eigen-coordinates alone (no modular
/// verification). Throws InsufficientSpectrum / RecoveryFailure.
std::vector<std::uint64_t> exponent_candidates(const EigenSystem& es, std::span<const std::complex<double>> z0_tilde,
                                               std::span<const std::complex<double>> ze_tilde, std::uint64_t period,
                                               std::vector<EigenDiagnostic>* diagnostics = nullptr);

/// Smallest e >= 0 with m^e = ciphertext (mod p), found through the linear
/// representation. The result is reduced modulo zeta(m).
RecoveryResult recover_exponent(std::uint64_t p, std::uint64_t m, std::uint64_t ciphertext);

/// d^ = d (mod zeta) for the RSA key pair (e, d) of p1 p2.
RecoveryResult recover_rsa_key(std::uint64_t p1, std::uint64_t p2, std::uint64_t public_exponent);

}  // namespace koopcrypt
