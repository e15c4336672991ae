#include "koopcrypt/dynsys.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "koopcrypt/errors.hpp"

namespace koopcrypt {

namespace {

void require_rsa_primes(std::uint64_t p1, std::uint64_t p2) {
  if (p1 <= 2 || !is_prime(p1) || p2 <= 2 || !is_prime(p2)) throw DomainError("RSA requires two odd primes");
  if (p1 == p2) throw DomainError("RSA requires distinct primes");
}

}  // namespace

const char* to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::dh: return "dh";
    case Scheme::rsa: return "rsa";
    case Scheme::learned: return "learned";
  }
  return "unknown";
}

CryptoInstance CryptoInstance::dh(std::uint64_t p, std::uint64_t generator) {
  if (p <= 2 || !is_prime(p)) throw DomainError("DH modulus " + std::to_string(p) + " must be an odd prime");
  if (generator < 1 || generator >= p || !is_primitive_root(generator, p)) {
    throw DomainError(std::to_string(generator) + " is not a primitive root modulo " + std::to_string(p));
  }
  return {Scheme::dh, GroupElement(generator, Modulus(p, {{p, 1}}))};
}

CryptoInstance CryptoInstance::rsa(std::uint64_t p1, std::uint64_t p2, std::uint64_t multiplier) {
  require_rsa_primes(p1, p2);
  Factorization f = p1 < p2 ? Factorization{{p1, 1}, {p2, 1}} : Factorization{{p2, 1}, {p1, 1}};
  return {Scheme::rsa, GroupElement(multiplier, Modulus(p1 * p2, std::move(f)))};
}

CryptoInstance CryptoInstance::with_secret_hint(std::uint64_t secret) const {
  CryptoInstance copy = *this;
  copy.secret_hint_ = secret;
  return copy;
}

Trajectory::Trajectory(std::vector<std::uint64_t> values, std::uint64_t multiplier, std::uint64_t modulus,
                       std::optional<std::uint64_t> period)
    : values_(std::move(values)), multiplier_(multiplier), modulus_(modulus), period_(period) {
  if (values_.empty()) throw DomainError("Trajectory: at least x_0 is required");
  if (modulus_ < 2) throw DomainError("Trajectory: modulus must be at least 2");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (values_[k] >= modulus_) throw DomainError("Trajectory: value " + std::to_string(values_[k]) + " is not reduced");
    if (k > 0 && mod_mul(values_[k - 1], multiplier_, modulus_) != values_[k]) {
      throw DomainError("Trajectory: recurrence broken at index " + std::to_string(k));
    }
  }
  if (period_ && *period_ != period_length(multiplier_, modulus_)) {
    throw DomainError("Trajectory: " + std::to_string(*period_) + " is not the period of the multiplier");
  }
}

std::uint64_t Trajectory::at(std::size_t k) const {
  if (k < values_.size()) return values_[k];
  if (!period_ || *period_ > values_.size()) {
    throw RangeError("Trajectory: index " + std::to_string(k) + " beyond " + std::to_string(values_.size()) +
                     " stored values and no usable period");
  }
  return values_[k % *period_];
}

bool Trajectory::covers(std::size_t k) const noexcept {
  return k < values_.size() || (period_ && *period_ <= values_.size());
}

std::uint64_t period_length(std::uint64_t multiplier, std::uint64_t modulus) {
  if (modulus < 2) throw DomainError("period_length: modulus must be at least 2");
  if (std::gcd(multiplier % modulus, modulus) != 1) {
    throw DomainError("period_length: multiplier must be coprime to the modulus");
  }
  return multiplicative_order(multiplier, modulus);
}

Trajectory simulate(std::uint64_t multiplier, std::uint64_t modulus, std::uint64_t x0, std::size_t steps) {
  if (modulus < 2) throw DomainError("simulate: modulus must be at least 2");
  if (std::gcd(x0 % modulus, modulus) != 1) throw DomainError("simulate: x0 must be coprime to the modulus");
  const std::uint64_t period = period_length(multiplier, modulus);
  std::vector<std::uint64_t> values;
  values.reserve(steps + 1);
  std::uint64_t x = x0 % modulus;
  values.push_back(x);
  for (std::size_t k = 0; k < steps; ++k) {
    x = mod_mul(multiplier, x, modulus);
    values.push_back(x);
  }
  return {std::move(values), multiplier % modulus, modulus, period};
}

Trajectory simulate(const CryptoInstance& instance, std::uint64_t x0, std::size_t steps) {
  return simulate(instance.multiplier(), instance.modulus().value(), x0, steps);
}

std::size_t default_horizon(const Modulus& modulus) { return 2 * modulus.carmichael(); }

RsaKeyPair rsa_keygen(std::uint64_t p1, std::uint64_t p2, std::uint64_t secret_exponent, std::uint64_t message) {
  require_rsa_primes(p1, p2);
  const std::uint64_t phi = (p1 - 1) * (p2 - 1);
  if (secret_exponent == 0 || std::gcd(secret_exponent, phi) != 1) {
    throw KeyError("rsa_keygen: d = " + std::to_string(secret_exponent) + " is not coprime to phi = " +
                   std::to_string(phi));
  }
  const std::uint64_t e = mod_inverse(static_cast<std::int64_t>(secret_exponent % phi), phi);
  return {e == 0 ? phi : e, secret_exponent, CryptoInstance::rsa(p1, p2, message).with_secret_hint(secret_exponent)};
}

std::uint64_t encrypt(const CryptoInstance& instance, std::uint64_t exponent) {
  if (exponent < 1) throw DomainError("encrypt: exponent must be at least 1");
  return mod_pow(instance.multiplier(), exponent, instance.modulus().value());
}

}  // namespace koopcrypt
