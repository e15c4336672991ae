#pragma once

// Two observable families for the modular-multiplication map:
//   unit circle  h_j(x) = exp(i 2pi m^{j+1} x / p),  j = 0..q
//   value list   h_j(x_k) = x_{k+j}
// Unit-circle lifts keep each angle as the exact numerator m^{j+1} x mod p;
// complex values are derived on request.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "koopcrypt/dynsys.hpp"

namespace koopcrypt {

class UnitCircleLift {
 public:
  /// Component j has angle 2pi * numerators[j] / modulus. Numerators are reduced mod p.
  UnitCircleLift(std::vector<std::uint64_t> numerators, std::uint64_t multiplier, std::uint64_t modulus);

  /// Rebuilds exact numerators from complex values by rounding angle * p / 2pi.
  static UnitCircleLift from_values(std::span<const std::complex<double>> values, std::uint64_t multiplier,
                                    std::uint64_t modulus);

  std::size_t q() const noexcept { return numerators_.size() - 1; }
  std::size_t size() const noexcept { return numerators_.size(); }
  std::uint64_t multiplier() const noexcept { return multiplier_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::span<const std::uint64_t> numerators() const noexcept { return numerators_; }

  double angle(std::size_t j) const;
  std::complex<double> value(std::size_t j) const;
  std::vector<std::complex<double>> values() const;

  friend bool operator==(const UnitCircleLift&, const UnitCircleLift&) = default;

 private:
  std::vector<std::uint64_t> numerators_;
  std::uint64_t multiplier_;
  std::uint64_t modulus_;
};

UnitCircleLift lift_unit_circle(std::uint64_t x, std::uint64_t multiplier, std::uint64_t modulus, std::size_t q);

/// Inverse map read from component j. Searches alpha = 0, 1, ... for an integer
/// x = (n_j + alpha p) / (m^{j+1} mod p) in [1, p-1]; gives up after p tries
/// with InversionFailure.
std::uint64_t invert_unit_circle(const UnitCircleLift& z, std::size_t j);

class ValueListLift {
 public:
  explicit ValueListLift(std::vector<std::uint64_t> components);

  std::size_t q() const noexcept { return components_.size() - 1; }
  std::size_t size() const noexcept { return components_.size(); }
  std::span<const std::uint64_t> components() const noexcept { return components_; }
  std::uint64_t operator[](std::size_t j) const { return components_[j]; }

  friend bool operator==(const ValueListLift&, const ValueListLift&) = default;

 private:
  std::vector<std::uint64_t> components_;
};

/// (x_k, ..., x_{k+q}); indices past the data wrap through the trajectory period.
ValueListLift lift_value_list(const Trajectory& traj, std::size_t k, std::size_t q);

std::uint64_t invert_value_list(const ValueListLift& z);

}  // namespace koopcrypt
