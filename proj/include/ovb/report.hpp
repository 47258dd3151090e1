#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ovb/benchmark.hpp"
#include "ovb/csv_io.hpp"
#include "ovb/dataset.hpp"
#include "ovb/decision.hpp"
#include "ovb/sensitivity.hpp"

namespace ovb {

struct ModeReport {
  BoundResult bounds;  // fractions, not percents
  Verdict verdict;
};

// One row of the summary table: robustness values, benchmarked bounds and
// verdicts for the requested modes. R^2 quantities are stored as fractions;
// the renderers emit *_pct fields scaled by 100.
struct SensitivityReport {
  double estimate = 0;
  double se = 0;
  double t_stat = 0;
  long df = 0;
  double rv_q = 0;
  double rv_q_alpha = 0;
  double r2_yd_x = 0;
  std::optional<ModeReport> total;
  std::optional<ModeReport> partial;
  // query metadata
  double q = 1.0;
  double alpha = 0.05;
  double k_d = 1.0;
  double k_y = 1.0;
  std::vector<std::string> benchmark_covariates;
  SignCase sign_case = SignCase::increase;
  std::vector<std::string> warnings;

  bool sign_case_resolvable() const { return classify_sign_case(sign_case); }
};

// Three-step pipeline: robustness values, benchmarked bounds with the
// sign-case resolve, verdicts. At least one benchmark spec must be present.
SensitivityReport run_analysis(const Dataset& data, const ModelSpec& model,
                               const std::optional<BenchmarkSpec>& bm_total,
                               const std::optional<BenchmarkSpec>& bm_partial,
                               const RobustnessQuery& rq, SignCase sign_case);

struct GridSpec {
  int steps_x = 0;
  int steps_y = 0;
  double max_x = 0;  // < 1
  double max_y = 0;  // <= 1
};

// Bias surface over confounder strength: row-major nodes on
// [0, max_x] x [0, max_y]. The (0, 0) cell reproduces the unadjusted
// estimate and t statistic exactly, so the grid t column carries no
// degrees-of-freedom correction.
struct ContourGrid {
  GridSpec grid;
  std::vector<double> r2_dz_x;
  std::vector<double> r2_yz_dx;
  std::vector<double> adjusted_estimate;
  std::vector<double> adjusted_t;

  std::size_t size() const { return r2_dz_x.size(); }
};

ContourGrid contour_grid(double estimate, double se, long df,
                         const GridSpec& grid, const RobustnessQuery& rq);

// Header: r2_dz_x,r2_yz_dx,adjusted_estimate,adjusted_t
void write_contour_csv(const ContourGrid& grid, std::ostream& out);
void write_contour_csv(const ContourGrid& grid, const std::string& path);

std::string render_text(const SensitivityReport& report);
nlohmann::json render_json(const SensitivityReport& report);

}  // namespace ovb
