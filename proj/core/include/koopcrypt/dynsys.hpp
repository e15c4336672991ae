#pragma once

// Modular-multiplication dynamics x_{k+1} = m x_k mod p, the common core of
// DH key generation, RSA encryption (multiplier = message) and RSA decryption
// (multiplier = ciphertext).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "koopcrypt/numtheory.hpp"

namespace koopcrypt {

enum class Scheme { dh, rsa, learned };

const char* to_string(Scheme scheme) noexcept;

/// Public data of one cryptosystem instance.
class CryptoInstance {
 public:
  /// DH: prime p > 2 and a primitive root m.
  static CryptoInstance dh(std::uint64_t p, std::uint64_t generator);
  /// RSA: p = p1 p2 for distinct odd primes; the multiplier is the message
  /// (encryption) or the ciphertext (decryption).
  static CryptoInstance rsa(std::uint64_t p1, std::uint64_t p2, std::uint64_t multiplier);

  Scheme scheme() const noexcept { return scheme_; }
  const Modulus& modulus() const noexcept { return multiplier_.modulus(); }
  std::uint64_t multiplier() const noexcept { return multiplier_.residue(); }

  /// Ground-truth exponent carried by test fixtures only. Recovery code never reads it.
  const std::optional<std::uint64_t>& secret_hint() const noexcept { return secret_hint_; }
  CryptoInstance with_secret_hint(std::uint64_t secret) const;

 private:
  CryptoInstance(Scheme scheme, GroupElement multiplier) : scheme_(scheme), multiplier_(std::move(multiplier)) {}

  Scheme scheme_;
  GroupElement multiplier_;
  std::optional<std::uint64_t> secret_hint_;
};

/// Finite orbit x_0..x_N of x -> multiplier * x mod modulus.
class Trajectory {
 public:
  Trajectory(std::vector<std::uint64_t> values, std::uint64_t multiplier, std::uint64_t modulus,
             std::optional<std::uint64_t> period);

  std::span<const std::uint64_t> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::uint64_t multiplier() const noexcept { return multiplier_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  const std::optional<std::uint64_t>& period() const noexcept { return period_; }
  std::uint64_t front() const { return values_.front(); }
  std::uint64_t back() const { return values_.back(); }

  /// x_k; indices past the stored range wrap through the period.
  /// Throws RangeError when k is out of range and the period is unknown.
  std::uint64_t at(std::size_t k) const;

  /// True if x_k is readable (stored, or reachable through the period).
  bool covers(std::size_t k) const noexcept;

 private:
  std::vector<std::uint64_t> values_;
  std::uint64_t multiplier_;
  std::uint64_t modulus_;
  std::optional<std::uint64_t> period_;
};

/// Orbit of x0 over `steps` steps. The period is attached (it is the order of
/// the multiplier, independent of a unit x0). Throws DomainError if x0 is not a unit.
Trajectory simulate(std::uint64_t multiplier, std::uint64_t modulus, std::uint64_t x0, std::size_t steps);
Trajectory simulate(const CryptoInstance& instance, std::uint64_t x0, std::size_t steps);

/// Default storage horizon: two Carmichael periods.
std::size_t default_horizon(const Modulus& modulus);

/// Minimal zeta >= 1 with multiplier^zeta = 1 (mod modulus); divides lambda(modulus).
std::uint64_t period_length(std::uint64_t multiplier, std::uint64_t modulus);

struct RsaKeyPair {
  std::uint64_t public_exponent;
  std::uint64_t secret_exponent;
  CryptoInstance instance;
};

/// e = d^{-1} mod phi(p1 p2). `message` becomes the instance multiplier.
/// Throws KeyError when gcd(d, phi) != 1 and DomainError on invalid primes.
RsaKeyPair rsa_keygen(std::uint64_t p1, std::uint64_t p2, std::uint64_t secret_exponent, std::uint64_t message = 2);

/// multiplier^exponent mod p, i.e. x_exponent of the orbit from 1. Exponent must be >= 1.
std::uint64_t encrypt(const CryptoInstance& instance, std::uint64_t exponent);

}  // namespace koopcrypt
