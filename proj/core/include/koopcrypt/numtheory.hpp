#pragma once

// Integer primitives over Z_n and the group-theoretic facts the rest of the
// library leans on: Fermat/Euler exponents, the Carmichael function and
// (generalized) Euler's criterion.
//
// Residues are 64-bit unsigned integers. Every product is formed in 128 bits
// before reduction, so no intermediate can overflow for any modulus < 2^64.

#include <compare>
#include <cstdint>
#include <vector>

namespace koopcrypt {

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization, ordered by increasing prime.
using Factorization = std::vector<PrimePower>;

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t modulus);

/// base^exponent mod modulus by square-and-multiply. Throws DomainError for modulus < 2.
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

/// Inverse of `a` modulo `modulus` via extended Euclid; `a` may be negative.
/// Throws NoInverseError when gcd(a, modulus) != 1.
std::uint64_t mod_inverse(std::int64_t a, std::uint64_t modulus);

/// Deterministic Miller-Rabin, exact over the whole 64-bit range.
bool is_prime(std::uint64_t n);

/// Trial division up to sqrt(n). n = 1 yields the empty factorization.
Factorization factorize(std::uint64_t n);

std::uint64_t euler_totient(std::uint64_t n);
std::uint64_t euler_totient(const Factorization& factors);

/// Exponent of the group Z_n^*: lcm of lambda over the prime-power components.
std::uint64_t carmichael(std::uint64_t n);
std::uint64_t carmichael(const Factorization& factors);

/// Smallest k >= 1 with m^k = 1 (mod n). Throws DomainError unless gcd(m, n) = 1.
std::uint64_t multiplicative_order(std::uint64_t m, std::uint64_t n);

/// True iff m generates Z_p^*. Throws DomainError if p is not prime or m is out of [1, p-1].
bool is_primitive_root(std::uint64_t m, std::uint64_t p);

/// Legendre symbol through m^((p-1)/2) mod p: +1 for quadratic residues, -1 otherwise.
int euler_criterion(std::int64_t m, std::uint64_t p);

/// Sign of m^(phi(p1 p2)/2) mod p1 p2. Pass p2 = 1 for a prime modulus.
/// Prime powers and p1 = p2 are rejected with DomainError.
int generalized_euler(std::int64_t m, std::uint64_t p1, std::uint64_t p2);

/// Reduces a signed integer into [0, modulus).
std::uint64_t reduce(std::int64_t a, std::uint64_t modulus);

/// A modulus >= 3 together with its prime factorization.
class Modulus {
 public:
  explicit Modulus(std::uint64_t value);
  Modulus(std::uint64_t value, Factorization factors);

  std::uint64_t value() const noexcept { return value_; }
  const Factorization& factorization() const noexcept { return factors_; }
  bool is_prime() const noexcept { return factors_.size() == 1 && factors_[0].exponent == 1; }
  std::uint64_t totient() const { return euler_totient(factors_); }
  std::uint64_t carmichael() const { return koopcrypt::carmichael(factors_); }

  friend bool operator==(const Modulus& a, const Modulus& b) noexcept { return a.value_ == b.value_; }

 private:
  std::uint64_t value_;
  Factorization factors_;
};

/// An element of Z_p^*: residue in [1, p-1] coprime to the modulus.
class GroupElement {
 public:
  GroupElement(std::uint64_t residue, Modulus modulus);

  std::uint64_t residue() const noexcept { return residue_; }
  const Modulus& modulus() const noexcept { return modulus_; }

 private:
  std::uint64_t residue_;
  Modulus modulus_;
};

}  // namespace koopcrypt
