#pragma once

#include <string>

#include "ovb/errors.hpp"

namespace ovb {

// Postulated strength of an unobserved confounder, expressed as partial R^2
// with the treatment (given covariates) and with the outcome (given
// treatment and covariates).
struct HypotheticalConfounder {
  double r2_dz_x = 0;   // in [0, 1)
  double r2_yz_dx = 0;  // in [0, 1]; 1 is the extreme scenario

  void validate() const;
};

struct RobustnessQuery {
  double q = 1.0;      // fraction of the estimate to explain away, (0, 1]
  double alpha = 0.05; // significance level, (0, 1)
  bool reduce = true;  // confounder pushes the estimate toward zero

  void validate() const;
};

struct BiasReport {
  double bias_magnitude = 0;
  double adjusted_estimate = 0;
  double adjusted_se = 0;
  double adjusted_t = 0;
  double relative_bias = 0;
};

// Largest displacement of the treatment coefficient a confounder of the
// given strength can produce:
//   se_res * sqrt(df * r2_yz_dx * r2_dz_x / (1 - r2_dz_x)),
// with se_res and df taken from the restricted (confounder-omitted) fit.
double bias_magnitude(double se_res, long df, const HypotheticalConfounder& hc);

// Treatment estimate once the postulated bias is removed (reduce) or added
// (amplify). The reduce branch is the worst case for explaining away.
double adjusted_estimate(double est_res, double se_res, long df,
                         const HypotheticalConfounder& hc, bool reduce);

// Standard error of the confounder-adjusted estimate:
//   se_res * sqrt((1 - r2_yz_dx) / (1 - r2_dz_x)) * sqrt(df / (df - 1)).
double adjusted_se(double se_res, long df, const HypotheticalConfounder& hc);

// t statistic of the adjusted estimate against the null value h0.
double adjusted_t(double est_res, double se_res, long df,
                  const HypotheticalConfounder& hc, bool reduce,
                  double h0 = 0.0);

BiasReport bias_report(double est_res, double se_res, long df,
                       const HypotheticalConfounder& hc, bool reduce);

// Equal-strength confounding (both partial R^2 set to the returned value)
// that shifts the estimate by the fraction q. With f = q * |t_res| / sqrt(df),
// this is (sqrt(f^4 + 4 f^2) - f^2) / 2.
double robustness_value(double t_res, long df, double q = 1.0);

// Equal-strength confounding at which the adjusted t test of the null
// tau = (1 - q) * tau_res lands on the two-sided critical value at level
// alpha with df - 1 degrees of freedom. Zero when the unadjusted statistic
// already fails to clear the critical value.
double robustness_value_alpha(double t_res, long df, double q, double alpha);

// |bias / tau_res| written in partial correlations:
//   (|r_yz_dx| * |r_dz_x| / |r_yd_x|) * sqrt((1 - r_yd_x^2) / (1 - r_dz_x^2)).
double relative_bias(double r_yz_dx, double r_dz_x, double r_yd_x);

// Two-sided Student-t critical value at level alpha.
double t_critical(double alpha, long df);

}  // namespace ovb
