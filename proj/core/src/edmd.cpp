#include "koopcrypt/edmd.hpp"

#include <Eigen/Dense>

#include <string>

#include "koopcrypt/errors.hpp"

namespace koopcrypt {

namespace {

Integer big(std::uint64_t v) { return Integer(static_cast<unsigned long>(v)); }

IntegerMatrix multiply_transpose(const IntegerMatrix& a, const IntegerMatrix& b) {
  IntegerMatrix out(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.rows(); ++j) {
      mpz_ptr acc = out(i, j).get_mpz_t();
      for (std::size_t k = 0; k < a.cols(); ++k) mpz_addmul(acc, a(i, k).get_mpz_t(), b(j, k).get_mpz_t());
    }
  return out;
}

std::size_t full_period(const Trajectory& traj) {
  if (!traj.period() || *traj.period() > traj.size()) {
    throw RangeError("trajectory does not cover a full period");
  }
  return *traj.period();
}

}  // namespace

HankelData build_hankel(const Trajectory& traj, std::size_t q, std::optional<std::size_t> samples) {
  const std::size_t n = samples.value_or(q + 1);
  if (n == 0) throw DomainError("build_hankel: at least one sample is required");
  if (!traj.covers(n + q)) {
    throw RangeError("build_hankel: need x_0..x_" + std::to_string(n + q) + " but only " +
                     std::to_string(traj.size()) + " values are stored");
  }
  HankelData hd{IntegerMatrix(q + 1, n), IntegerMatrix(q + 1, n), q, n};
  for (std::size_t i = 0; i <= q; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      hd.z(i, k) = big(traj.at(k + i));
      hd.z_plus(i, k) = big(traj.at(k + i + 1));
    }
  return hd;
}

RationalMatrix edmd_operator(const HankelData& hd) {
  const std::size_t rank = rank_exact(hd.z);
  if (rank < hd.q + 1) {
    throw RankDeficient("edmd_fit: rank(Z) = " + std::to_string(rank) + " < q+1 = " + std::to_string(hd.q + 1) +
                        "; lower q (see minimal_dimension)");
  }
  // A^T solves G A^T = C^T with the symmetric Gram matrix G = Z Z^T and C = Z+ Z^T.
  const IntegerMatrix gram = multiply_transpose(hd.z, hd.z);
  const IntegerMatrix cross_t = multiply_transpose(hd.z, hd.z_plus);
  const RationalMatrix at = solve_square(gram, cross_t);
  RationalMatrix a(at.cols(), at.rows());
  for (std::size_t i = 0; i < at.rows(); ++i)
    for (std::size_t j = 0; j < at.cols(); ++j) a(j, i) = at(i, j);
  return a;
}

CompanionSystem edmd_fit(const HankelData& hd) {
  const RationalMatrix a = edmd_operator(hd);
  const std::size_t n = hd.q + 1;
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) != (j == i + 1 ? 1 : 0)) throw std::logic_error("edmd_fit: fitted operator is not a companion matrix");
    }
  CompanionSystem cs;
  cs.alpha.assign(a.row(n - 1).begin(), a.row(n - 1).end());
  cs.scheme = Scheme::learned;
  return cs;
}

std::vector<double> edmd_fit_floating(const HankelData& hd) {
  const auto rows = static_cast<Eigen::Index>(hd.z.rows());
  const auto cols = static_cast<Eigen::Index>(hd.z.cols());
  Eigen::MatrixXd z(rows, cols);
  Eigen::VectorXd target(cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index k = 0; k < cols; ++k)
      z(i, k) = hd.z(static_cast<std::size_t>(i), static_cast<std::size_t>(k)).get_d();
  for (Eigen::Index k = 0; k < cols; ++k) target(k) = hd.z_plus(hd.q, static_cast<std::size_t>(k)).get_d();
  // Last row of A: alpha^T Z = last row of Z+.
  const Eigen::VectorXd alpha = z.transpose().colPivHouseholderQr().solve(target);
  return {alpha.data(), alpha.data() + alpha.size()};
}

MinimalDimension minimal_dimension(const Trajectory& traj) {
  const std::size_t zeta = full_period(traj);
  IntegerMatrix h(zeta, zeta);
  for (std::size_t i = 0; i < zeta; ++i)
    for (std::size_t k = 0; k < zeta; ++k) h(i, k) = big(traj.at(i + k));
  const std::size_t rank = rank_exact(std::move(h));
  MinimalDimension out;
  out.rank = rank;
  out.q = rank - 1;
  out.system = edmd_fit(build_hankel(traj, out.q, zeta));
  return out;
}

bool willems_check(const Trajectory& traj, std::size_t depth, std::span<const std::uint64_t> window,
                   std::optional<std::size_t> samples) {
  if (depth == 0 || window.size() != depth) throw DomainError("willems_check: window length must equal the depth");
  const std::size_t n = samples ? *samples : full_period(traj);
  if (n == 0) throw DomainError("willems_check: at least one sample is required");
  if (!traj.covers(n + depth - 1)) throw RangeError("willems_check: trajectory too short for the Hankel matrix");
  IntegerMatrix h(depth, n);
  for (std::size_t i = 0; i < depth; ++i)
    for (std::size_t k = 0; k < n; ++k) h(i, k) = big(traj.at(k + i));
  std::vector<Integer> w(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) w[i] = big(window[i]);
  return solve_exact(h, w).consistent;
}

}  // namespace koopcrypt
