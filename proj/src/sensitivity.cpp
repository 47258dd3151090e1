#include "ovb/sensitivity.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>

namespace ovb {

namespace {

// Solves x / sqrt(1 - x) = f for x in [0, 1); equivalent to the quadratic
// form (sqrt(f^4 + 4 f^2) - f^2) / 2 but stable for large f.
double strength_from_f(double f) {
  if (f <= 0.0) return 0.0;
  return 2.0 / (1.0 + std::sqrt(1.0 + 4.0 / (f * f)));
}

}  // namespace

void HypotheticalConfounder::validate() const {
  if (!std::isfinite(r2_dz_x) || r2_dz_x < 0.0 || r2_dz_x >= 1.0)
    fail(errc::invalid_confounder, "r2_dz_x must lie in [0, 1)");
  if (!std::isfinite(r2_yz_dx) || r2_yz_dx < 0.0 || r2_yz_dx > 1.0)
    fail(errc::invalid_confounder, "r2_yz_dx must lie in [0, 1]");
}

void RobustnessQuery::validate() const {
  if (!std::isfinite(q) || q <= 0.0 || q > 1.0)
    fail(errc::invalid_q, "q must lie in (0, 1]");
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 1.0)
    fail(errc::invalid_alpha, "alpha must lie in (0, 1)");
}

double t_critical(double alpha, long df) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 1.0)
    fail(errc::invalid_alpha, "alpha must lie in (0, 1)");
  if (df < 1) fail(errc::degenerate_df, "t distribution needs df >= 1");
  boost::math::students_t_distribution<double> dist(static_cast<double>(df));
  return boost::math::quantile(boost::math::complement(dist, alpha / 2.0));
}

double bias_magnitude(double se_res, long df, const HypotheticalConfounder& hc) {
  hc.validate();
  if (!(se_res > 0.0)) fail(errc::invalid_input, "se_res must be positive");
  if (df < 1) fail(errc::invalid_input, "df must be at least 1");
  return se_res * std::sqrt(static_cast<double>(df) * hc.r2_yz_dx * hc.r2_dz_x /
                            (1.0 - hc.r2_dz_x));
}

double adjusted_estimate(double est_res, double se_res, long df,
                         const HypotheticalConfounder& hc, bool reduce) {
  const double bias = bias_magnitude(se_res, df, hc);
  const double s = est_res < 0.0 ? -1.0 : 1.0;
  return reduce ? s * (std::abs(est_res) - bias)
                : s * (std::abs(est_res) + bias);
}

double adjusted_se(double se_res, long df, const HypotheticalConfounder& hc) {
  hc.validate();
  if (!(se_res > 0.0)) fail(errc::invalid_input, "se_res must be positive");
  if (df < 2) fail(errc::degenerate_df, "adjusted se needs df >= 2");
  return se_res * std::sqrt((1.0 - hc.r2_yz_dx) / (1.0 - hc.r2_dz_x)) *
         std::sqrt(static_cast<double>(df) / static_cast<double>(df - 1));
}

double adjusted_t(double est_res, double se_res, long df,
                  const HypotheticalConfounder& hc, bool reduce, double h0) {
  return (adjusted_estimate(est_res, se_res, df, hc, reduce) - h0) /
         adjusted_se(se_res, df, hc);
}

BiasReport bias_report(double est_res, double se_res, long df,
                       const HypotheticalConfounder& hc, bool reduce) {
  if (est_res == 0.0)
    fail(errc::invalid_input, "relative bias undefined for a zero estimate");
  BiasReport r;
  r.bias_magnitude = bias_magnitude(se_res, df, hc);
  r.adjusted_estimate = adjusted_estimate(est_res, se_res, df, hc, reduce);
  r.adjusted_se = adjusted_se(se_res, df, hc);
  r.adjusted_t = (r.adjusted_estimate) / r.adjusted_se;
  r.relative_bias = r.bias_magnitude / std::abs(est_res);
  return r;
}

double robustness_value(double t_res, long df, double q) {
  if (!std::isfinite(q) || q <= 0.0 || q > 1.0)
    fail(errc::invalid_q, "q must lie in (0, 1]");
  if (df < 1) fail(errc::invalid_input, "df must be at least 1");
  if (!std::isfinite(t_res)) fail(errc::invalid_input, "non-finite t statistic");
  const double f = q * std::abs(t_res) / std::sqrt(static_cast<double>(df));
  return strength_from_f(f);
}

double robustness_value_alpha(double t_res, long df, double q, double alpha) {
  if (!std::isfinite(q) || q <= 0.0 || q > 1.0)
    fail(errc::invalid_q, "q must lie in (0, 1]");
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 1.0)
    fail(errc::invalid_alpha, "alpha must lie in (0, 1)");
  if (df < 2) fail(errc::degenerate_df, "adjusted test needs df >= 2");
  if (!std::isfinite(t_res)) fail(errc::invalid_input, "non-finite t statistic");
  const double f = q * std::abs(t_res) / std::sqrt(static_cast<double>(df));
  const double f_crit =
      t_critical(alpha, df - 1) / std::sqrt(static_cast<double>(df - 1));
  return strength_from_f(f - f_crit);
}

double relative_bias(double r_yz_dx, double r_dz_x, double r_yd_x) {
  for (double r : {r_yz_dx, r_dz_x, r_yd_x})
    if (!std::isfinite(r)) fail(errc::invalid_correlation, "non-finite correlation");
  if (std::abs(r_yz_dx) > 1.0)
    fail(errc::invalid_correlation, "|r_yz_dx| exceeds 1");
  if (std::abs(r_dz_x) >= 1.0)
    fail(errc::invalid_correlation, "|r_dz_x| must be below 1");
  if (std::abs(r_yd_x) >= 1.0)
    fail(errc::invalid_correlation, "|r_yd_x| must be below 1");
  if (r_yd_x == 0.0)
    fail(errc::zero_treatment_association,
         "relative bias undefined when the treatment association is zero");
  return (std::abs(r_yz_dx) * std::abs(r_dz_x) / std::abs(r_yd_x)) *
         std::sqrt((1.0 - r_yd_x * r_yd_x) / (1.0 - r_dz_x * r_dz_x));
}

}  // namespace ovb
