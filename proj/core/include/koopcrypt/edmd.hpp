#pragma once

// Data-driven identification of the companion representation from trajectory
// snapshots (extended dynamic mode decomposition over exact rationals).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "koopcrypt/dynsys.hpp"
#include "koopcrypt/exact.hpp"
#include "koopcrypt/spectral.hpp"

namespace koopcrypt {

struct HankelData {
  IntegerMatrix z;       // column k = (x_k, ..., x_{k+q})
  IntegerMatrix z_plus;  // column k = (x_{k+1}, ..., x_{k+q+1})
  std::size_t q = 0;
  std::size_t samples = 0;
};

/// Needs x_0..x_{N+q}; indices past the stored values wrap through the period.
/// N defaults to q + 1.
HankelData build_hankel(const Trajectory& traj, std::size_t q, std::optional<std::size_t> samples = std::nullopt);

/// A = (Z+ Z^T)(Z Z^T)^{-1} in exact arithmetic, returned in companion form.
/// Throws RankDeficient unless Z has full row rank.
CompanionSystem edmd_fit(const HankelData& hd);

/// Full least-squares operator, exact. Same preconditions as edmd_fit.
RationalMatrix edmd_operator(const HankelData& hd);

/// Floating-point least squares (column-pivoting QR) for cross-checks only.
std::vector<double> edmd_fit_floating(const HankelData& hd);

struct MinimalDimension {
  std::size_t q = 0;
  std::size_t rank = 0;
  CompanionSystem system;
};

/// q = rank(H) - 1 for the full-period Hankel matrix H, then the companion
/// fitted on the first q + 1 rows. Throws RangeError without a full period.
MinimalDimension minimal_dimension(const Trajectory& traj);

/// True iff `window` lies in the column span of the depth-L Hankel matrix
/// whose columns are the windows starting at 0..samples-1 (default: one period).
bool willems_check(const Trajectory& traj, std::size_t depth, std::span<const std::uint64_t> window,
                   std::optional<std::size_t> samples = std::nullopt);

}  // namespace koopcrypt
