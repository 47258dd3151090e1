#include "ovb/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ovb/partial_r2.hpp"
#include "ovb/regress.hpp"

namespace ovb {

namespace {

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt_pct(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", 100.0 * fraction);
  return buf;
}

const char* yn(bool b) { return b ? "yes" : "no"; }

}  // namespace

SensitivityReport run_analysis(const Dataset& data, const ModelSpec& model,
                               const std::optional<BenchmarkSpec>& bm_total,
                               const std::optional<BenchmarkSpec>& bm_partial,
                               const RobustnessQuery& rq, SignCase sign_case) {
  rq.validate();
  if (!bm_total && !bm_partial)
    fail(errc::invalid_input, "at least one benchmark spec is required");
  model.validate(data);

  SensitivityReport report;
  const FitResult fit = fit_ols(data, model);
  const CoefSummary coef = coef_summary(fit, model.treatment);
  report.estimate = coef.estimate;
  report.se = coef.se;
  report.t_stat = coef.t;
  report.df = coef.df;
  report.q = rq.q;
  report.alpha = rq.alpha;
  report.sign_case = sign_case;

  report.r2_yd_x = partial_r2(
      PartialQuery{data, model.outcome, model.treatment, model.covariates});
  report.rv_q = robustness_value(coef.t, coef.df, rq.q);
  report.rv_q_alpha = robustness_value_alpha(coef.t, coef.df, rq.q, rq.alpha);

  const BenchmarkSpec* meta = bm_partial ? &*bm_partial : &*bm_total;
  report.k_d = meta->k_d;
  report.k_y = meta->k_y;
  report.benchmark_covariates = meta->benchmark_covariates;

  const auto run_mode = [&](const BenchmarkSpec& bm, BenchmarkMode mode) {
    BenchmarkSpec adjusted = bm;
    adjusted.mode = mode;
    ModeReport mr;
    mr.bounds = compute_bounds(data, model, adjusted, report.r2_yd_x, sign_case);
    mr.verdict =
        verdict(mr.bounds, report.rv_q, report.rv_q_alpha, report.r2_yd_x);
    if (mr.bounds.clamped)
      report.warnings.push_back(
          std::string(benchmark_mode_name(mode)) +
          " mode: a bound hit its cap; reported strengths are truncated");
    return mr;
  };
  if (bm_total) report.total = run_mode(*bm_total, BenchmarkMode::total);
  if (bm_partial) report.partial = run_mode(*bm_partial, BenchmarkMode::partial);

  if (!report.sign_case_resolvable())
    report.warnings.push_back(
        "sign case 'reduce-same': no exact expression exists; the resolved "
        "outcome-confounder strength is a lower bound");
  return report;
}

ContourGrid contour_grid(double estimate, double se, long df,
                         const GridSpec& grid, const RobustnessQuery& rq) {
  rq.validate();
  if (grid.steps_x < 2 || grid.steps_y < 2)
    fail(errc::invalid_grid, "need at least 2 steps per axis");
  if (!std::isfinite(grid.max_x) || grid.max_x <= 0.0 || grid.max_x >= 1.0)
    fail(errc::invalid_grid, "max_x must lie in (0, 1)");
  if (!std::isfinite(grid.max_y) || grid.max_y <= 0.0 || grid.max_y > 1.0)
    fail(errc::invalid_grid, "max_y must lie in (0, 1]");
  if (!(se > 0.0)) fail(errc::invalid_input, "se must be positive");
  if (df < 1) fail(errc::invalid_input, "df must be at least 1");

  ContourGrid out;
  out.grid = grid;
  const std::size_t cells =
      static_cast<std::size_t>(grid.steps_x) * grid.steps_y;
  out.r2_dz_x.reserve(cells);
  out.r2_yz_dx.reserve(cells);
  out.adjusted_estimate.reserve(cells);
  out.adjusted_t.reserve(cells);

  for (int i = 0; i < grid.steps_x; ++i) {
    const double x = grid.max_x * i / (grid.steps_x - 1);
    for (int j = 0; j < grid.steps_y; ++j) {
      const double y = grid.max_y * j / (grid.steps_y - 1);
      const HypotheticalConfounder hc{x, y};
      const double est = adjusted_estimate(estimate, se, df, hc, rq.reduce);
      // no df correction here so the origin reproduces (estimate, t) exactly
      const double t = est / (se * std::sqrt((1.0 - y) / (1.0 - x)));
      out.r2_dz_x.push_back(x);
      out.r2_yz_dx.push_back(y);
      out.adjusted_estimate.push_back(est);
      out.adjusted_t.push_back(t);
    }
  }
  return out;
}

void write_contour_csv(const ContourGrid& grid, std::ostream& out) {
  out << "r2_dz_x,r2_yz_dx,adjusted_estimate,adjusted_t\n";
  char buf[32];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double row[4] = {grid.r2_dz_x[i], grid.r2_yz_dx[i],
                           grid.adjusted_estimate[i], grid.adjusted_t[i]};
    for (int c = 0; c < 4; ++c) {
      if (c) out << ',';
      std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      out << buf;
    }
    out << '\n';
  }
}

void write_contour_csv(const ContourGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot open '" + path + "' for writing");
  write_contour_csv(grid, out);
  if (!out) fail(errc::io_error, "failed while writing '" + path + "'");
}

namespace {

nlohmann::json verdict_json(const Verdict& v) {
  return nlohmann::json{
      {"point_estimate_robust", v.point_estimate_robust},
      {"ci_robust", v.ci_robust},
      {"extreme_scenario_safe", v.extreme_scenario_safe},
      {"margin_point_pct", 100.0 * v.margin_point},
      {"margin_ci_pct", 100.0 * v.margin_ci},
      {"margin_extreme_pct", 100.0 * v.margin_extreme},
  };
}

nlohmann::json mode_json(const ModeReport& m) {
  return nlohmann::json{
      {"r2_dz_x_pct", 100.0 * m.bounds.r2_dz_x},
      {"r2_yz_x_pct", 100.0 * m.bounds.r2_yz_x},
      {"r2_yz_dx_pct", 100.0 * m.bounds.r2_yz_dx},
      {"exact", m.bounds.exact},
      {"clamped", m.bounds.clamped},
      {"verdict", verdict_json(m.verdict)},
  };
}

}  // namespace

nlohmann::json render_json(const SensitivityReport& r) {
  nlohmann::json j{
      {"estimate", r.estimate},
      {"se", r.se},
      {"t", r.t_stat},
      {"df", r.df},
      {"q", r.q},
      {"alpha", r.alpha},
      {"k_d", r.k_d},
      {"k_y", r.k_y},
      {"benchmark_covariates", r.benchmark_covariates},
      {"sign_case", sign_case_name(r.sign_case)},
      {"sign_case_exact", r.sign_case_resolvable()},
      {"rv_q_pct", 100.0 * r.rv_q},
      {"rv_q_alpha_pct", 100.0 * r.rv_q_alpha},
      {"r2_yd_x_pct", 100.0 * r.r2_yd_x},
      {"warnings", r.warnings},
  };
  j["modes"] = nlohmann::json::object();
  if (r.total) j["modes"]["total"] = mode_json(*r.total);
  if (r.partial) j["modes"]["partial"] = mode_json(*r.partial);
  return j;
}

std::string render_text(const SensitivityReport& r) {
  std::ostringstream out;
  out << "treatment-effect sensitivity summary\n";
  out << "  estimate = " << fmt_g(r.estimate) << "   se = " << fmt_g(r.se)
      << "   t = " << fmt_g(r.t_stat) << "   df = " << r.df << "\n";
  out << "  q = " << fmt_g(r.q) << "   alpha = " << fmt_g(r.alpha)
      << "   k_d = " << fmt_g(r.k_d) << "   k_y = " << fmt_g(r.k_y) << "\n";
  out << "  benchmark =";
  for (const auto& c : r.benchmark_covariates) out << " " << c;
  out << "   sign case = " << sign_case_name(r.sign_case)
      << (r.sign_case_resolvable() ? "" : " (lower bound)") << "\n\n";

  out << "  RV_q = " << fmt_pct(r.rv_q) << "%"
      << "   RV_q,alpha = " << fmt_pct(r.rv_q_alpha) << "%"
      << "   R2 outcome~treatment|covariates = " << fmt_pct(r.r2_yd_x)
      << "%\n\n";

  out << "  mode      r2_dz_x     r2_yz_dx    point-robust  ci-robust  "
         "extreme-safe\n";
  const auto mode_line = [&](const char* name, const ModeReport& m) {
    char line[160];
    std::snprintf(line, sizeof line,
                  "  %-8s  %9s%%  %9s%%  %-12s  %-9s  %s\n", name,
                  fmt_pct(m.bounds.r2_dz_x).c_str(),
                  fmt_pct(m.bounds.r2_yz_dx).c_str(),
                  yn(m.verdict.point_estimate_robust), yn(m.verdict.ci_robust),
                  yn(m.verdict.extreme_scenario_safe));
    out << line;
  };
  if (r.total) mode_line("total", *r.total);
  if (r.partial) mode_line("partial", *r.partial);

  if (!r.warnings.empty()) {
    out << "\n  warnings:\n";
    for (const auto& w : r.warnings) out << "    - " << w << "\n";
  }
  return out.str();
}

}  // namespace ovb
