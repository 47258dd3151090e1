#include "ovb/partial_r2.hpp"

#include <algorithm>
#include <cmath>

#include "ovb/regress.hpp"

namespace ovb {

namespace {

// Residual variance at or below this fraction of the source column's
// centered variance counts as zero.
constexpr double kZeroVarRel = 1e-24;

double centered_sumsq(const Eigen::VectorXd& v) {
  return (v.array() - v.mean()).matrix().squaredNorm();
}

void check_query(const PartialQuery& q) {
  if (q.left == q.right)
    fail(errc::invalid_spec, "left and right must differ ('" + q.left + "')");
  for (const auto& g : q.given) {
    if (g == q.left || g == q.right)
      fail(errc::invalid_spec,
           "'" + g + "' appears both as a variable and in the conditioning set");
  }
}

Eigen::VectorXd residual_checked(const Dataset& data, const std::string& target,
                                 std::span<const std::string> given) {
  Eigen::VectorXd col = detail::to_eigen(data.column(target));
  const double scale = centered_sumsq(col);
  Eigen::VectorXd res = detail::fit_raw(col, detail::design_from(data, given),
                                        /*intercept=*/true)
                            .residuals;
  if (scale <= 0 || centered_sumsq(res) <= kZeroVarRel * scale)
    fail(errc::zero_variance_residual,
         "'" + target + "' has no variance left after conditioning");
  return res;
}

}  // namespace

double partial_r2_group(const Dataset& data, const std::string& left,
                        std::span<const std::string> right_block,
                        std::span<const std::string> given) {
  if (right_block.empty())
    fail(errc::invalid_input, "empty right-hand block");
  const double r2_base =
      fit_columns(data, left, given, /*intercept=*/true).total_r2;
  if (1.0 - r2_base <= kSaturationTol)
    fail(errc::degenerate_conditioning,
         "conditioning set already explains '" + left + "' completely");
  std::vector<std::string> augmented(given.begin(), given.end());
  augmented.insert(augmented.end(), right_block.begin(), right_block.end());
  const double r2_aug =
      fit_columns(data, left, augmented, /*intercept=*/true).total_r2;
  return std::clamp((r2_aug - r2_base) / (1.0 - r2_base), 0.0, 1.0);
}

double partial_r2(const PartialQuery& q) {
  check_query(q);
  const std::string right[] = {q.right};
  return partial_r2_group(q.data, q.left, right, q.given);
}

double partial_corr(const PartialQuery& q) {
  check_query(q);
  const Eigen::VectorXd rl = residual_checked(q.data, q.left, q.given);
  const Eigen::VectorXd rr = residual_checked(q.data, q.right, q.given);
  const Eigen::ArrayXd a = rl.array() - rl.mean();
  const Eigen::ArrayXd b = rr.array() - rr.mean();
  const double corr =
      (a * b).sum() / std::sqrt(a.square().sum() * b.square().sum());
  return std::clamp(corr, -1.0, 1.0);
}

double recursive_partial_corr(double r_yz_x, double r_yd_x, double r_dz_x) {
  if (!std::isfinite(r_yz_x) || !std::isfinite(r_yd_x) || !std::isfinite(r_dz_x))
    fail(errc::invalid_input, "non-finite correlation");
  if (std::abs(r_yz_x) > 1.0)
    fail(errc::invalid_correlation, "|r_yz_x| exceeds 1");
  if (std::abs(r_yd_x) >= 1.0 || std::abs(r_dz_x) >= 1.0)
    fail(errc::denominator_degenerate,
         "conditioning correlation has magnitude 1");
  return (r_yz_x - r_yd_x * r_dz_x) /
         (std::sqrt(1.0 - r_yd_x * r_yd_x) * std::sqrt(1.0 - r_dz_x * r_dz_x));
}

double cohen_f2(double r2) {
  if (!std::isfinite(r2) || r2 < 0.0)
    fail(errc::invalid_input, "r2 must lie in [0, 1)");
  if (r2 >= 1.0) fail(errc::saturated, "f2 undefined at r2 = 1");
  return r2 / (1.0 - r2);
}

double eta(const Dataset& data, const std::string& y, const std::string& z,
           std::span<const std::string> x) {
  if (y == z) fail(errc::invalid_spec, "outcome and confounder must differ");
  for (const auto& c : x)
    if (c == y || c == z)
      fail(errc::invalid_spec, "'" + c + "' appears on both sides");

  const Eigen::VectorXd zcol = detail::to_eigen(data.column(z));
  const double zscale = centered_sumsq(zcol);
  Eigen::VectorXd zres =
      detail::fit_raw(zcol, detail::design_from(data, x), true).residuals;
  if (zscale <= 0 || centered_sumsq(zres) <= kZeroVarRel * zscale)
    fail(errc::zero_variance_residual,
         "'" + z + "' lies in the span of the conditioning columns");

  const Eigen::VectorXd ycol = detail::to_eigen(data.column(y));
  const double r2_y_zres = detail::fit_raw(ycol, zres, true).total_r2;
  const double r2_y_z = detail::fit_raw(ycol, zcol, true).total_r2;
  return r2_y_zres - r2_y_z;
}

}  // namespace ovb
