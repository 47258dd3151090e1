#pragma once

#include "ovb/benchmark.hpp"

namespace ovb {

// Comparison of benchmarked bounds against the robustness values. Margins
// are threshold minus comparand; a verdict is favorable only on a strictly
// positive margin, so ties resolve to "not robust".
struct Verdict {
  bool point_estimate_robust = false;
  bool ci_robust = false;
  bool extreme_scenario_safe = false;
  double margin_point = 0;
  double margin_ci = 0;
  double margin_extreme = 0;
};

Verdict verdict(const BoundResult& bounds, double rv, double rv_alpha,
                double r2_yd_x);

}  // namespace ovb
