#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "koopcrypt/errors.hpp"
#include "koopcrypt/numtheory.hpp"
#include "koopcrypt/spectral.hpp"

namespace koopcrypt {

namespace {

// Relative magnitude below which a transformed coordinate counts as unexcited.
constexpr double kExcitation = 1e-7;
// Largest distance (in grid steps) between a measured ratio angle and the
// nearest admissible root of unity on the exact path.
constexpr double kSnap = 0.25;

double positive_angle(std::complex<double> z) {
  double a = std::arg(z);
  if (a < 0) a += 2 * std::numbers::pi;
  return a;
}

struct Congruence {
  std::uint64_t residue = 0;
  std::uint64_t modulus = 1;
};

// x = a (mod m) and x = b (mod n); empty when incompatible.
std::optional<Congruence> combine(const Congruence& x, const Congruence& y) {
  const std::uint64_t g = std::gcd(x.modulus, y.modulus);
  const std::uint64_t diff = (y.residue + y.modulus - x.residue % y.modulus) % y.modulus;
  if (diff % g != 0) return std::nullopt;
  const std::uint64_t m = x.modulus / g;
  const std::uint64_t n = y.modulus / g;
  const std::uint64_t lcm = x.modulus * n;
  std::uint64_t t = 0;
  if (n > 1) t = mod_mul(diff / g, mod_inverse(static_cast<std::int64_t>(m % n), n), n);
  return Congruence{(x.residue + x.modulus * t) % lcm, lcm};
}

std::vector<std::complex<double>> orbit(std::uint64_t start, std::uint64_t multiplier, std::uint64_t modulus,
                                        std::size_t length) {
  std::vector<std::complex<double>> z(length);
  std::uint64_t x = start % modulus;
  for (std::size_t k = 0; k < length; ++k) {
    z[k] = static_cast<double>(x);
    x = mod_mul(x, multiplier, modulus);
  }
  return z;
}

struct Solved {
  std::uint64_t exponent = 0;
  Parity parity = Parity::unavailable;
  std::vector<EigenDiagnostic> diagnostics;
};

// Smallest verified e with multiplier^e = target, via the eigen-coordinates of
// the orbits of 1 and of target.
Solved solve_with(const EigenSystem& es, std::uint64_t multiplier, std::uint64_t target, std::uint64_t modulus,
                  std::uint64_t period) {
  const std::size_t n = es.dimension();
  const auto z0 = transform_coordinates(es, orbit(1, multiplier, modulus, n));
  const auto ze = transform_coordinates(es, orbit(target, multiplier, modulus, n));
  Solved out;
  const auto candidates = exponent_candidates(es, z0, ze, period, &out.diagnostics);
  const auto hit = std::find_if(candidates.begin(), candidates.end(),
                                [&](std::uint64_t e) { return mod_pow(multiplier, e, modulus) == target % modulus; });
  if (hit == candidates.end()) {
    throw RecoveryFailure("recovery: none of " + std::to_string(candidates.size()) +
                          " spectral candidates reproduces the target");
  }
  out.exponent = *hit;
  try {
    out.parity = parity_test(es, z0, ze);
  } catch (const DegenerateCoordinate&) {
    out.parity = Parity::unavailable;
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> exponent_candidates(const EigenSystem& es, std::span<const std::complex<double>> z0_tilde,
                                               std::span<const std::complex<double>> ze_tilde, std::uint64_t period,
                                               std::vector<EigenDiagnostic>* diagnostics) {
  const std::size_t n = es.dimension();
  if (z0_tilde.size() != n || ze_tilde.size() != n) throw DomainError("exponent_candidates: dimension mismatch");
  if (period == 0) throw DomainError("exponent_candidates: period must be positive");

  double scale = 0;
  for (const auto& v : z0_tilde) scale = std::max(scale, std::abs(v));
  const double threshold = kExcitation * std::max(scale, 1e-300);

  std::vector<EigenDiagnostic> diag(n);
  for (std::size_t j = 0; j < n; ++j) {
    diag[j].index = j;
    diag[j].eigenvalue = es.eigenvalues[j];
    if (es.analytic()) diag[j].turn = es.turns[j];
    diag[j].excited = std::abs(z0_tilde[j]) > threshold;
    if (diag[j].excited) diag[j].ratio = ze_tilde[j] / z0_tilde[j];
  }

  auto usable = [&](std::size_t j) { return diag[j].excited && !es.is_real(j); };
  std::vector<std::size_t> modes;
  for (std::size_t j = 0; j < n; ++j)
    if (usable(j)) modes.push_back(j);
  // Without a non-real mode the -1 eigenvalue still fixes e mod 2.
  if (modes.empty() && es.minus_one_index && diag[*es.minus_one_index].excited) modes.push_back(*es.minus_one_index);
  if (modes.empty()) throw InsufficientSpectrum("recovery: no excited eigenvalue carries angle information");

  std::vector<std::uint64_t> result;
  if (es.analytic()) {
    Congruence acc;
    for (std::size_t j : modes) {
      EigenDiagnostic& d = diag[j];
      const std::uint64_t r = es.turns[j].get_num().get_ui();
      const std::uint64_t s = es.turns[j].get_den().get_ui();
      const double grid = positive_angle(d.ratio) * static_cast<double>(s) / (2 * std::numbers::pi);
      const double snapped = std::round(grid);
      if (std::abs(grid - snapped) > kSnap) {
        throw RecoveryFailure("recovery: ratio at eigenvalue " + std::to_string(j) +
                              " is not a power of the eigenvalue");
      }
      const std::uint64_t t = static_cast<std::uint64_t>(snapped) % s;
      // l-search: e = (t + l s) / r must be a nonnegative integer below the period.
      const std::uint64_t a = mod_mul(t, mod_inverse(static_cast<std::int64_t>(r % s), s), s);
      d.used = true;
      d.residue = a;
      d.modulus = s;
      for (std::uint64_t e = a; e < period; e += s) d.candidates.push_back(e);
      const auto next = combine(acc, {a, s});
      if (!next) {
        if (diagnostics) *diagnostics = std::move(diag);
        throw RecoveryFailure("recovery: inconsistent congruences across eigenvalues");
      }
      acc = *next;
    }
    for (std::uint64_t e = acc.residue; e < period; e += acc.modulus) result.push_back(e);
  } else {
    const double eps = 1e-9 * static_cast<double>(n);
    bool first = true;
    for (std::size_t j : modes) {
      EigenDiagnostic& d = diag[j];
      d.used = true;
      const double theta = positive_angle(es.eigenvalues[j]);
      const double b = positive_angle(d.ratio);
      const double two_pi = 2 * std::numbers::pi;
      for (std::uint64_t l = 0;; ++l) {
        const double e = (b + two_pi * static_cast<double>(l)) / theta;
        if (e >= static_cast<double>(period)) break;
        const double rounded = std::round(e);
        if (std::abs(e - rounded) < eps) d.candidates.push_back(static_cast<std::uint64_t>(rounded));
      }
      std::sort(d.candidates.begin(), d.candidates.end());
      if (first) {
        result = d.candidates;
        first = false;
      } else {
        std::vector<std::uint64_t> both;
        std::set_intersection(result.begin(), result.end(), d.candidates.begin(), d.candidates.end(),
                              std::back_inserter(both));
        result = std::move(both);
      }
    }
  }
  if (diagnostics) *diagnostics = std::move(diag);
  if (result.empty()) throw RecoveryFailure("recovery: no exponent is consistent with every eigenvalue");
  return result;
}

RecoveryResult recover_exponent(std::uint64_t p, std::uint64_t m, std::uint64_t ciphertext) {
  const Modulus modulus(p);
  if (std::gcd(m % p, p) != 1) throw DomainError("recover_exponent: m must be coprime to p");
  if (ciphertext == 0 || ciphertext >= p) throw DomainError("recover_exponent: ciphertext must lie in [1, p-1]");
  const std::uint64_t zeta = period_length(m, p);

  const bool dh = modulus.is_prime() && p > 3 && mod_pow(m, (p - 1) / 2, p) == p - 1;
  CompanionSystem cs = dh ? dh_companion(p) : shift_companion(modulus.carmichael());
  const EigenSystem es = eigensystem(cs);
  Solved s = solve_with(es, m, ciphertext, p, zeta);

  RecoveryResult out;
  out.exponent = s.exponent;
  out.parity = s.parity;
  out.residue_class_modulus = zeta;
  out.dimension = cs.dimension();
  out.scheme = modulus.is_prime() ? Scheme::dh : Scheme::rsa;
  out.diagnostics = std::move(s.diagnostics);
  out.verified = true;
  return out;
}

RecoveryResult recover_rsa_key(std::uint64_t p1, std::uint64_t p2, std::uint64_t public_exponent) {
  const CryptoInstance inst = CryptoInstance::rsa(p1, p2, 1);
  const std::uint64_t p = inst.modulus().value();
  const std::uint64_t phi = inst.modulus().totient();
  const std::uint64_t lambda = inst.modulus().carmichael();
  if (public_exponent == 0 || std::gcd(public_exponent, phi) != 1) {
    throw KeyError("recover_rsa_key: e is not coprime to phi(p)");
  }

  // Probes of maximal order; encryption by a unit exponent preserves the order.
  std::vector<std::uint64_t> probes;
  for (std::uint64_t m = 2; m < p && probes.size() < 2; ++m) {
    if (std::gcd(m, p) == 1 && multiplicative_order(m, p) == lambda) probes.push_back(m);
  }
  if (probes.empty()) throw RecoveryFailure("recover_rsa_key: no probe message of maximal order");

  const CompanionSystem cs = rsa_companion(p1, p2);
  const EigenSystem es = eigensystem(cs);
  const std::uint64_t probe = probes.front();
  const std::uint64_t c = mod_pow(probe, public_exponent, p);
  Solved s = solve_with(es, c, probe, p, multiplicative_order(c, p));

  RecoveryResult out;
  out.exponent = s.exponent;
  out.parity = s.parity;
  out.residue_class_modulus = lambda;
  out.dimension = cs.dimension();
  out.scheme = Scheme::rsa;
  out.diagnostics = std::move(s.diagnostics);
  out.probes = probes;

  auto decrypts = [&](std::uint64_t d, std::uint64_t m) { return mod_pow(mod_pow(m, public_exponent, p), d, p) == m; };
  for (std::uint64_t d = out.exponent; d < phi + lambda; d += lambda) {
    if (d == 0) continue;
    if (std::all_of(probes.begin(), probes.end(), [&](std::uint64_t m) { return decrypts(d, m); })) {
      out.verified_key = d;
      break;
    }
  }
  out.verified = out.verified_key.has_value();
  if (!out.verified) throw RecoveryFailure("recover_rsa_key: no key in the recovered coset decrypts both probes");
  return out;
}

}  // namespace koopcrypt
