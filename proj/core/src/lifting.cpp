#include "koopcrypt/lifting.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>

#include "koopcrypt/errors.hpp"
#include "int128.hpp"
#include "koopcrypt/numtheory.hpp"

namespace koopcrypt {

using detail::i128;
using detail::u128;

UnitCircleLift::UnitCircleLift(std::vector<std::uint64_t> numerators, std::uint64_t multiplier,
                               std::uint64_t modulus)
    : numerators_(std::move(numerators)), multiplier_(multiplier), modulus_(modulus) {
  if (modulus_ < 2) throw DomainError("UnitCircleLift: modulus must be at least 2");
  if (numerators_.empty()) throw DomainError("UnitCircleLift: needs at least one component");
  if (std::gcd(multiplier_ % modulus_, modulus_) != 1) {
    throw DomainError("UnitCircleLift: multiplier must be coprime to the modulus");
  }
  for (auto& n : numerators_) n %= modulus_;
}

UnitCircleLift UnitCircleLift::from_values(std::span<const std::complex<double>> values, std::uint64_t multiplier,
                                           std::uint64_t modulus) {
  std::vector<std::uint64_t> numerators;
  numerators.reserve(values.size());
  const double scale = static_cast<double>(modulus) / (2 * std::numbers::pi);
  for (const auto& v : values) {
    const double turns = std::round(std::arg(v) * scale);
    const auto n = static_cast<std::int64_t>(turns);
    numerators.push_back(reduce(n, modulus));
  }
  return {std::move(numerators), multiplier, modulus};
}

double UnitCircleLift::angle(std::size_t j) const {
  return 2 * std::numbers::pi * static_cast<double>(numerators_.at(j)) / static_cast<double>(modulus_);
}

std::complex<double> UnitCircleLift::value(std::size_t j) const { return std::polar(1.0, angle(j)); }

std::vector<std::complex<double>> UnitCircleLift::values() const {
  std::vector<std::complex<double>> out;
  out.reserve(numerators_.size());
  for (std::size_t j = 0; j < numerators_.size(); ++j) out.push_back(value(j));
  return out;
}

UnitCircleLift lift_unit_circle(std::uint64_t x, std::uint64_t multiplier, std::uint64_t modulus, std::size_t q) {
  if (modulus < 2) throw DomainError("lift_unit_circle: modulus must be at least 2");
  if (std::gcd(multiplier % modulus, modulus) != 1) {
    throw DomainError("lift_unit_circle: multiplier must be coprime to the modulus");
  }
  std::vector<std::uint64_t> numerators(q + 1);
  std::uint64_t n = mod_mul(multiplier % modulus, x % modulus, modulus);
  for (std::size_t j = 0; j <= q; ++j) {
    numerators[j] = n;
    n = mod_mul(n, multiplier % modulus, modulus);
  }
  return {std::move(numerators), multiplier, modulus};
}

std::uint64_t invert_unit_circle(const UnitCircleLift& z, std::size_t j) {
  if (j > z.q()) throw RangeError("invert_unit_circle: component " + std::to_string(j) + " out of range");
  const std::uint64_t p = z.modulus();
  const std::uint64_t divisor = mod_pow(z.multiplier(), j + 1, p);
  const std::uint64_t base = z.numerators()[j] % p;
  auto search = [&](auto zero) -> std::optional<std::uint64_t> {
    using W = decltype(zero);
    for (std::uint64_t a = 0; a < p; ++a) {
      const W candidate = base + static_cast<W>(a) * p;
      if (candidate % divisor != 0) continue;
      const W x = candidate / divisor;
      if (x >= 1 && x <= p - 1) return static_cast<std::uint64_t>(x);
    }
    return std::nullopt;
  };
  // Below 2^32 every candidate fits in 64 bits.
  const auto x = p <= 0xFFFF'FFFFULL ? search(std::uint64_t{0}) : search(u128{0});
  if (x) return *x;
  throw InversionFailure("invert_unit_circle: no preimage within " + std::to_string(p) + " iterations");
}

ValueListLift::ValueListLift(std::vector<std::uint64_t> components) : components_(std::move(components)) {
  if (components_.empty()) throw DomainError("ValueListLift: needs at least one component");
}

ValueListLift lift_value_list(const Trajectory& traj, std::size_t k, std::size_t q) {
  std::vector<std::uint64_t> out(q + 1);
  for (std::size_t j = 0; j <= q; ++j) out[j] = traj.at(k + j);
  return ValueListLift(std::move(out));
}

std::uint64_t invert_value_list(const ValueListLift& z) { return z[0]; }

}  // namespace koopcrypt
