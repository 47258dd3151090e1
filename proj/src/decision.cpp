#include "ovb/decision.hpp"

#include <algorithm>
#include <cmath>

namespace ovb {

Verdict verdict(const BoundResult& bounds, double rv, double rv_alpha,
                double r2_yd_x) {
  for (double v : {bounds.r2_dz_x, bounds.r2_yz_dx, rv, rv_alpha, r2_yd_x})
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
      fail(errc::invalid_input, "verdict inputs must lie in [0, 1]");

  const double worst = std::max(bounds.r2_dz_x, bounds.r2_yz_dx);
  Verdict v;
  v.margin_point = rv - worst;
  v.margin_ci = rv_alpha - worst;
  v.margin_extreme = r2_yd_x - bounds.r2_dz_x;
  v.point_estimate_robust = v.margin_point > 0.0;
  v.ci_robust = v.margin_ci > 0.0;
  v.extreme_scenario_safe = v.margin_extreme > 0.0;
  return v;
}

}  // namespace ovb
