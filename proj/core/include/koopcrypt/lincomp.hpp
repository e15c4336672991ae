#pragma once

// Linear complexity over Q (Berlekamp-Massey) and small nonlinear liftings
// that linearize a few classic integer sequences in fewer dimensions.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "koopcrypt/exact.hpp"

namespace koopcrypt {

/// x_k = sum_{i=1..L} c_i x_{k-i}, started from the first L values.
struct Lfsr {
  std::vector<Rational> coefficients;  // c_1..c_L
  std::vector<Rational> seed;

  std::size_t length() const noexcept { return coefficients.size(); }
  std::vector<Rational> generate(std::size_t count) const;
};

/// Shortest recurrence generating the whole sequence (always exists).
Lfsr shortest_lfsr(std::span<const Rational> seq);

/// The shortest recurrence when it is identifiable from the data: accepted if
/// L < n/2, otherwise only if the recurrence fitted without the last sample
/// predicts it. Empty means no LFSR. Throws DomainError on an empty sequence.
std::optional<Lfsr> berlekamp_massey(std::span<const Rational> seq);

std::vector<Rational> to_rationals(std::span<const Integer> seq);

enum class Family { root_of_unity, exponential, log_affine, affine_augmented };
inline constexpr Family kFamilies[] = {Family::root_of_unity, Family::exponential, Family::log_affine,
                                       Family::affine_augmented};
const char* to_string(Family family) noexcept;

/// Generative laws and their linear liftings:
///   root_of_unity     x' = x + a mod n   z = exp(i 2pi x / n),  z' = exp(i 2pi a / n) z
///   exponential       x' = x + a         z = exp(x),            z' = exp(a) z
///   log_affine        x' = m x^b         w = ln x,              w' = b w + ln m  (augmented by 1 when m != 1)
///   affine_augmented  x' = m x + a       z = (x, a),            z' = [[m, 1], [0, 1]] z
struct ReducedModel {
  Family family = Family::exponential;
  std::size_t state_dimension = 1;
  Integer x0;
  Integer a;          // root_of_unity, exponential, affine_augmented
  Integer modulus;    // root_of_unity
  Integer m;          // log_affine, affine_augmented
  unsigned long b = 1;  // log_affine

  /// Named parameters as exact decimal strings.
  std::vector<std::pair<std::string, std::string>> parameters() const;
  /// Decoded output of the lifted system, evaluated exactly through the
  /// equivalent integer law.
  std::vector<Integer> replay(std::size_t count) const;
};

std::optional<ReducedModel> fit_reduced(std::span<const Integer> seq, Family family);

struct ComplexityReport {
  std::size_t length = 0;
  std::optional<std::size_t> lfsr_length;
  std::optional<ReducedModel> best;
  std::vector<ReducedModel> fits;
};

/// Ties between families go to the smaller state dimension, then to the order of kFamilies.
ComplexityReport compare_complexity(std::span<const Integer> seq);

/// id, length, lfsr_length, reduced_family, reduced_dim; missing values are empty.
std::vector<std::string> csv_row(const std::string& id, const ComplexityReport& report);
inline const std::vector<std::string> kComplexityCsvHeader = {"id", "length", "lfsr_length", "reduced_family",
                                                             "reduced_dim"};

}  // namespace koopcrypt
