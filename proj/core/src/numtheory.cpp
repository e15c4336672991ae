#include "koopcrypt/numtheory.hpp"

#include <array>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "koopcrypt/errors.hpp"
#include "int128.hpp"

namespace koopcrypt {

using detail::i128;
using detail::u128;

namespace {


bool miller_rabin_round(std::uint64_t n, std::uint64_t d, unsigned s, std::uint64_t witness) {
  std::uint64_t x = mod_pow(witness % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mod_mul(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

std::uint64_t ipow(std::uint64_t base, unsigned exponent) {
  std::uint64_t result = 1;
  while (exponent-- > 0) result *= base;
  return result;
}

}  // namespace

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t modulus) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % modulus);
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
  if (modulus < 2) throw DomainError("mod_pow: modulus must be at least 2");
  std::uint64_t result = 1;
  base %= modulus;
  while (exponent > 0) {
    if (exponent & 1U) result = mod_mul(result, base, modulus);
    base = mod_mul(base, base, modulus);
    exponent >>= 1U;
  }
  return result;
}

std::uint64_t reduce(std::int64_t a, std::uint64_t modulus) {
  if (modulus == 0) throw DomainError("reduce: zero modulus");
  if (a >= 0) return static_cast<std::uint64_t>(a) % modulus;
  // -(a+1) avoids overflow on INT64_MIN.
  const std::uint64_t magnitude = static_cast<std::uint64_t>(-(a + 1)) + 1;
  const std::uint64_t r = magnitude % modulus;
  return r == 0 ? 0 : modulus - r;
}

std::uint64_t mod_inverse(std::int64_t a, std::uint64_t modulus) {
  if (modulus == 0) throw DomainError("mod_inverse: zero modulus");
  if (modulus == 1) return 0;
  // Extended Euclid on (a mod n, n) with signed 128-bit Bezout coefficients.
  i128 old_r = reduce(a, modulus), r = modulus;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    const i128 quotient = old_r / r;
    old_r = std::exchange(r, old_r - quotient * r);
    old_s = std::exchange(s, old_s - quotient * s);
  }
  if (old_r != 1) {
    throw NoInverseError("mod_inverse: " + std::to_string(a) + " is not invertible modulo " +
                         std::to_string(modulus));
  }
  i128 inv = old_s % static_cast<i128>(modulus);
  if (inv < 0) inv += modulus;
  return static_cast<std::uint64_t>(inv);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kSmall = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kSmall) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // {2..17} is a complete witness set below 3.4e14; the twelve primes up to 37
  // cover every 64-bit integer.
  const std::size_t witnesses = n < 341'550'071'728'321ULL ? 7 : kSmall.size();
  for (std::size_t i = 0; i < witnesses; ++i) {
    if (!miller_rabin_round(n, d, s, kSmall[i])) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("factorize: zero has no factorization");
  Factorization factors;
  auto strip = [&](std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) factors.push_back({p, e});
  };
  strip(2);
  for (std::uint64_t p = 3; p <= n / p; p += 2) strip(p);
  if (n > 1) factors.push_back({n, 1});
  return factors;
}

std::uint64_t euler_totient(const Factorization& factors) {
  std::uint64_t phi = 1;
  for (const auto& [p, e] : factors) phi *= ipow(p, e - 1) * (p - 1);
  return phi;
}

std::uint64_t euler_totient(std::uint64_t n) {
  if (n == 0) throw DomainError("euler_totient: n must be positive");
  return euler_totient(factorize(n));
}

std::uint64_t carmichael(const Factorization& factors) {
  std::uint64_t lambda = 1;
  for (const auto& [p, e] : factors) {
    std::uint64_t component = 0;
    if (p == 2) {
      component = e == 1 ? 1 : e == 2 ? 2 : ipow(2, e - 2);
    } else {
      component = ipow(p, e - 1) * (p - 1);
    }
    lambda = std::lcm(lambda, component);
  }
  return lambda;
}

std::uint64_t carmichael(std::uint64_t n) {
  if (n == 0) throw DomainError("carmichael: n must be positive");
  return carmichael(factorize(n));
}

std::uint64_t multiplicative_order(std::uint64_t m, std::uint64_t n) {
  if (n == 0) throw DomainError("multiplicative_order: zero modulus");
  if (n == 1) return 1;
  if (std::gcd(m % n, n) != 1) {
    throw DomainError("multiplicative_order: " + std::to_string(m) + " is not a unit modulo " +
                      std::to_string(n));
  }
  // The order divides lambda(n); strip prime factors while the power stays 1.
  std::uint64_t order = carmichael(n);
  for (const auto& [q, e] : factorize(order)) {
    for (unsigned i = 0; i < e && order % q == 0; ++i) {
      if (mod_pow(m, order / q, n) != 1) break;
      order /= q;
    }
  }
  return order;
}

bool is_primitive_root(std::uint64_t m, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("is_primitive_root: " + std::to_string(p) + " is not prime");
  if (m < 1 || m > p - 1) throw DomainError("is_primitive_root: m must lie in [1, p-1]");
  for (const auto& factor : factorize(p - 1)) {
    if (mod_pow(m, (p - 1) / factor.prime, p) == 1) return false;
  }
  return true;
}

int euler_criterion(std::int64_t m, std::uint64_t p) {
  if (p <= 2 || !is_prime(p)) throw DomainError("euler_criterion: p must be an odd prime");
  const std::uint64_t residue = reduce(m, p);
  if (residue == 0) throw DomainError("euler_criterion: m must be coprime to p");
  const std::uint64_t r = mod_pow(residue, (p - 1) / 2, p);
  return r == 1 ? 1 : -1;
}

int generalized_euler(std::int64_t m, std::uint64_t p1, std::uint64_t p2) {
  if (p1 <= 2 || !is_prime(p1)) throw DomainError("generalized_euler: p1 must be an odd prime");
  if (p2 == p1) throw DomainError("generalized_euler: p1 and p2 must be distinct");
  if (p2 != 1 && (p2 <= 2 || !is_prime(p2))) {
    throw DomainError("generalized_euler: p2 must be 1 or an odd prime");
  }
  const std::uint64_t p = p1 * p2;
  const std::uint64_t residue = reduce(m, p);
  if (std::gcd(residue, p) != 1) throw DomainError("generalized_euler: m must be coprime to p1*p2");
  const std::uint64_t phi = (p1 - 1) * (p2 == 1 ? 1 : p2 - 1);
  const std::uint64_t r = mod_pow(residue, phi / 2, p);
  if (r == 1) return 1;
  if (r == p - 1) return -1;
  throw std::logic_error("generalized_euler: m^(phi/2) is neither 1 nor -1");
}

Modulus::Modulus(std::uint64_t value) : Modulus(value, value >= 3 ? factorize(value) : Factorization{}) {}

Modulus::Modulus(std::uint64_t value, Factorization factors) : value_(value), factors_(std::move(factors)) {
  if (value_ < 3) throw DomainError("Modulus: value must be at least 3");
  std::uint64_t product = 1;
  for (const auto& [p, e] : factors_) {
    if (!koopcrypt::is_prime(p)) throw DomainError("Modulus: factor " + std::to_string(p) + " is not prime");
    product *= ipow(p, e);
  }
  if (product != value_) throw DomainError("Modulus: factorization does not multiply to the value");
}

GroupElement::GroupElement(std::uint64_t residue, Modulus modulus) : residue_(residue), modulus_(std::move(modulus)) {
  if (residue_ < 1 || residue_ >= modulus_.value() || std::gcd(residue_, modulus_.value()) != 1) {
    throw DomainError("GroupElement: " + std::to_string(residue_) + " is not a unit modulo " +
                      std::to_string(modulus_.value()));
  }
}

}  // namespace koopcrypt
