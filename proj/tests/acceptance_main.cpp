// Acceptance suite: every criterion prints one PASS/FAIL line; the process
// exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "ovb/benchmark.hpp"
#include "ovb/csv_io.hpp"
#include "ovb/dgp.hpp"
#include "ovb/partial_r2.hpp"
#include "ovb/regress.hpp"
#include "ovb/report.hpp"
#include "ovb/sensitivity.hpp"

#ifndef OVB_CLI_PATH
#error "OVB_CLI_PATH must name the ovb-sense binary"
#endif
#ifndef OVB_SOURCE_DIR
#error "OVB_SOURCE_DIR must name the repository root"
#endif

using namespace ovb;

namespace {

struct Checker {
  int failures = 0;
  std::vector<std::string> messages;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    if (messages.size() < 6) messages.push_back(what);
  }

  void near(double actual, double expected, double tol, const std::string& label) {
    expect(std::isfinite(actual) && std::abs(actual - expected) <= tol,
           label + ": got " + std::to_string(actual) + ", want " +
               std::to_string(expected) + " +/- " + std::to_string(tol));
  }

  void rel(double actual, double expected, double tol, const std::string& label) {
    const double denom = std::max(std::abs(expected), 1e-300);
    expect(std::isfinite(actual) &&
               std::abs(actual - expected) / denom <= tol,
           label + ": got " + std::to_string(actual) + ", want " +
               std::to_string(expected) + " (rel " + std::to_string(tol) + ")");
  }
};


ModelSpec dgp_model(int k) {
  ModelSpec spec{"y", "d", {}};
  for (int j = 0; j < k; ++j) spec.covariates.push_back("x" + std::to_string(j + 1));
  return spec;
}

// ---------------------------------------------------------------------------

void darfur_reproduction(Checker& ck) {
  const std::string data_path =
      std::string(OVB_SOURCE_DIR) + "/tests/data/darfur.csv";
  std::ifstream head(data_path);
  ck.expect(head.good(), "darfur fixture present");
  std::string header;
  std::getline(head, header);
  std::string covariates;
  {
    std::stringstream ss(header);
    for (std::string col; std::getline(ss, col, ',');) {
      if (col == "peacefactor" || col == "directlyharmed") continue;
      if (!covariates.empty()) covariates += ',';
      covariates += col;
    }
  }

  const std::string cmd =
      std::string(OVB_CLI_PATH) + " analyze --data " + data_path +
      " --outcome peacefactor --treatment directlyharmed --covariates " +
      covariates +
      " --benchmark female --kd 1 --ky 1 --q 1 --alpha 0.05 --format json";

  const auto t0 = std::chrono::steady_clock::now();
  FILE* pipe = popen(cmd.c_str(), "r");
  ck.expect(pipe != nullptr, "spawn analyze");
  if (!pipe) return;
  std::string output;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe))
    output.append(buf, got);
  const int status = pclose(pipe);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  ck.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, "analyze exit code 0");
  ck.expect(elapsed < 5.0, "analyze finished in " + std::to_string(elapsed) +
                               "s (budget 5s)");

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(output);
  } catch (...) {
    ck.expect(false, "json output parses");
    return;
  }
  ck.near(j["estimate"], 0.097, 0.0005, "estimate");
  ck.near(j["se"], 0.023, 0.0005, "se");
  ck.near(j["rv_q_pct"], 13.878, 0.01, "RV_q");
  ck.near(j["rv_q_alpha_pct"], 7.626, 0.01, "RV_q_alpha");
  ck.near(j["r2_yd_x_pct"], 2.187, 0.01, "R2 Y~D|X");
  ck.near(j["modes"]["partial"]["r2_dz_x_pct"], 0.916, 0.01, "partial r2_dz_x");
  ck.near(j["modes"]["partial"]["r2_yz_dx_pct"], 12.464, 0.05,
          "partial r2_yz_dx");
  ck.near(j["modes"]["total"]["r2_dz_x_pct"], 0.268, 0.01, "total r2_dz_x");
  ck.near(j["modes"]["total"]["r2_yz_dx_pct"], 25.907, 0.10, "total r2_yz_dx");

  const auto& pv = j["modes"]["partial"]["verdict"];
  ck.expect(pv["point_estimate_robust"].get<bool>(), "partial: point robust");
  ck.expect(!pv["ci_robust"].get<bool>(), "partial: ci not robust");
  ck.expect(pv["extreme_scenario_safe"].get<bool>(), "partial: extreme safe");
  const auto& tv = j["modes"]["total"]["verdict"];
  ck.expect(!tv["point_estimate_robust"].get<bool>(), "total: point not robust");
  ck.expect(!tv["ci_robust"].get<bool>(), "total: ci not robust");
  ck.expect(tv["extreme_scenario_safe"].get<bool>(), "total: extreme safe");

  // the independent bisection lands on the same robustness value
  ck.near(100.0 * oracle_rv(j["t"].get<double>(), j["df"].get<long>(), 1.0),
          13.878, 1e-3, "bisected RV on the fitted statistic");
}

void bias_identity(Checker& ck) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 100; ++i) {
    DgpConfig cfg;
    cfg.n = 200;
    cfg.k_covariates = 1 + i % 5;
    cfg.confounder_treatment_strength = 0.4 + 0.1 * (i % 4);
    cfg.confounder_outcome_strength = 0.4 + 0.08 * (i % 5);
    cfg.covariate_confounder_correlation = (i % 3) * 0.2;
    const Dataset data = generate(cfg, 1000 + std::uint64_t(i));
    const OracleQuantities o = oracle_all(data, dgp_model(cfg.k_covariates), "z");
    const double predicted =
        bias_magnitude(o.se_res, o.df_res, {o.r2_dz_x, o.r2_yz_dx});
    ck.rel(predicted, std::abs(o.bias), 1e-8, "displacement, dgp " + std::to_string(i));
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ck.expect(elapsed < 10.0, "finished in " + std::to_string(elapsed) + "s (budget 10s)");
}

void decomposition_suite(Checker& ck) {
  const auto t0 = std::chrono::steady_clock::now();
  ovbtest::Rng rng(2222);
  for (int i = 0; i < 200; ++i) {
    const int k = 1 + i % 4;
    const std::size_t n = 30 + std::size_t(rng.integer(0, 70));
    DgpConfig cfg;
    cfg.n = long(n);
    cfg.k_covariates = k;
    cfg.covariate_confounder_correlation = 0.3;
    const Dataset data = generate(cfg, 3000 + std::uint64_t(i));
    const ModelSpec model = dgp_model(k);
    const auto& X = model.covariates;

    std::vector<std::string> xz = X;
    xz.push_back("z");
    const double r2_yxz = fit_columns(data, "y", xz, true).total_r2;
    const double r2_yx = fit_columns(data, "y", X, true).total_r2;

    Dataset aug;
    for (const auto& name : data.column_names())
      aug.add_column(name, data.column(name));
    aug.add_column("zperp", residualize(data, "z", X, true));
    const std::string just_perp[] = {"zperp"};
    const double r2_yzperp = fit_columns(aug, "y", just_perp, true).total_r2;

    // joint R2 splits over the orthogonalized confounder
    ck.near(r2_yxz, r2_yx + r2_yzperp, 1e-9, "split, instance " + std::to_string(i));

    // conditioning is insensitive to pre-residualizing the confounder
    ck.near(partial_r2(PartialQuery{data, "y", "z", X}),
            partial_r2(PartialQuery{aug, "y", "zperp", X}), 1e-9,
            "exchangeability, instance " + std::to_string(i));

    // fitted-value decomposition, elementwise
    const auto fit_joint = fit_columns(data, "y", xz, true);
    const auto fit_x = fit_columns(data, "y", X, true);
    const auto fit_zp = fit_columns(aug, "y", just_perp, true);
    const double zp_mean = fit_zp.coefficients.at(kInterceptName);
    const auto& y = data.column("y");
    double worst = 0;
    for (std::size_t r = 0; r < n; ++r) {
      const double joint = y[r] - fit_joint.residuals[r];
      const double sum =
          (y[r] - fit_x.residuals[r]) + (y[r] - fit_zp.residuals[r] - zp_mean);
      worst = std::max(worst, std::abs(joint - sum));
    }
    ck.expect(worst <= 1e-9,
              "fitted decomposition, instance " + std::to_string(i) +
                  " worst " + std::to_string(worst));

    // with an exactly orthogonal confounder the plain R2 adds up
    DgpConfig ocfg = cfg;
    ocfg.orthogonalize_z = true;
    const Dataset odata = generate(ocfg, 9000 + std::uint64_t(i));
    std::vector<std::string> oxz = X;
    oxz.push_back("z");
    const std::string just_z[] = {"z"};
    ck.near(fit_columns(odata, "y", oxz, true).total_r2,
            fit_columns(odata, "y", X, true).total_r2 +
                fit_columns(odata, "y", just_z, true).total_r2,
            1e-9, "orthogonal additivity, instance " + std::to_string(i));
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ck.expect(elapsed < 10.0, "finished in " + std::to_string(elapsed) + "s (budget 10s)");
}

void route_agreement(Checker& ck) {
  for (int i = 0; i < 200; ++i) {
    DgpConfig cfg;
    cfg.n = 80 + (i % 5) * 30;
    cfg.k_covariates = 1 + i % 4;
    cfg.covariate_confounder_correlation = 0.25;
    const Dataset data = generate(cfg, 5000 + std::uint64_t(i));
    const ModelSpec model = dgp_model(cfg.k_covariates);
    const auto& X = model.covariates;
    std::vector<std::string> xd = X;
    xd.push_back("d");

    const double via_increment = partial_r2(PartialQuery{data, "y", "z", xd});
    const double via_corr = partial_corr(PartialQuery{data, "y", "z", xd});
    ck.near(via_increment, via_corr * via_corr, 1e-10,
            "increment vs residual corr, query " + std::to_string(i));

    const double recursive = recursive_partial_corr(
        partial_corr(PartialQuery{data, "y", "z", X}),
        partial_corr(PartialQuery{data, "y", "d", X}),
        partial_corr(PartialQuery{data, "d", "z", X}));
    ck.near(via_corr, recursive, 1e-10,
            "residual corr vs recursion, query " + std::to_string(i));
  }
}

void rv_plugback_and_bisection(Checker& ck) {
  ovbtest::Rng rng(6060);
  for (int i = 0; i < 500; ++i) {
    const double t = rng.uniform(0.05, 9.0) * (rng.uniform() < 0.5 ? -1 : 1);
    const long df = rng.integer(2, 2000);
    const double q = rng.uniform(0.02, 1.0);
    const double rv = robustness_value(t, df, q);
    const double r_yd = t / std::sqrt(t * t + double(df));
    if (rv > 0)
      ck.near(relative_bias(std::sqrt(rv), std::sqrt(rv), r_yd), q, 1e-8,
              "plug-back " + std::to_string(i));
    ck.near(oracle_rv(t, df, q), rv, 1e-8, "bisected RV " + std::to_string(i));
  }

  for (int i = 0; i < 500; ++i) {
    const double t = rng.uniform(-7.0, 7.0);
    const long df = rng.integer(3, 500);
    const double q = rng.uniform(0.05, 1.0);
    const double alpha = rng.uniform(0.005, 0.3);
    const double closed = robustness_value_alpha(t, df, q, alpha);

    const double est = std::abs(t);
    const double crit = t_critical(alpha, df - 1);
    const auto g = [&](double x) {
      return adjusted_t(est, 1.0, df, HypotheticalConfounder{x, x}, true,
                        (1.0 - q) * est) -
             crit;
    };
    double bisected = 0.0;
    if (g(0.0) > 0.0) {
      double lo = 0.0, hi = 1.0 - 1e-9;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
      }
      bisected = 0.5 * (lo + hi);
    }
    ck.near(closed, bisected, 1e-6, "alpha-adjusted RV " + std::to_string(i));
  }
}

void sign_case_suite(Checker& ck) {
  for (SignCase regime : {SignCase::increase, SignCase::reduce_opposite_sign}) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      DgpConfig cfg;
      cfg.n = 150;
      cfg.k_covariates = 2;
      cfg.confounder_treatment_strength = 0.6;
      cfg.covariate_confounder_correlation = 0.25;
      cfg.sign_regime = regime;
      const Dataset data = generate(cfg, 7000 + seed);
      const OracleQuantities o = oracle_all(data, dgp_model(2), "z");
      const auto resolved =
          resolve_r2yz_dx(o.r2_yz_x, o.r2_dz_x, o.r2_yd_x, regime);
      ck.near(resolved.r2_yz_dx, o.r2_yz_dx, 1e-8,
              std::string(sign_case_name(regime)) + ", seed " +
                  std::to_string(seed));
      ck.expect(resolved.exact, "exact flag set");
    }
  }

  int strict = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    DgpConfig cfg;
    cfg.n = 150;
    cfg.k_covariates = 2;
    cfg.confounder_treatment_strength = 0.6;
    cfg.covariate_confounder_correlation = 0.25;
    cfg.sign_regime = SignCase::reduce_same_sign;
    const Dataset data = generate(cfg, 8000 + seed);
    const OracleQuantities o = oracle_all(data, dgp_model(2), "z");
    const auto resolved = resolve_r2yz_dx(o.r2_yz_x, o.r2_dz_x, o.r2_yd_x,
                                          SignCase::reduce_same_sign);
    ck.expect(resolved.r2_yz_dx <= o.r2_yz_dx + 1e-12,
              "lower bound holds, seed " + std::to_string(seed));
    ck.expect(!resolved.exact, "exact flag cleared");
    if (resolved.r2_yz_dx < o.r2_yz_dx - 1e-12) ++strict;
  }
  ck.expect(strict >= 95, "strictly below in " + std::to_string(strict) +
                              "/100 seeds (need 95)");

  ovbtest::Rng rng(7777);
  int checked = 0;
  while (checked < 10000) {
    const double a = rng.uniform(-1.0, 1.0);
    const double b = rng.uniform(-1.0, 1.0);
    const double c = rng.uniform(-1.0, 1.0);
    if (std::abs(b * c) < 1e-6 || std::abs(a - b * c) < 1e-6 ||
        std::abs(std::abs(a) - std::abs(b * c)) < 1e-6)
      continue;
    ++checked;
    const bool same_sign = ((a - b * c) < 0) == ((b * c) < 0);
    const bool additive =
        std::abs(std::abs(a - b * c) - (std::abs(a) - std::abs(b * c))) <= 1e-12;
    if (same_sign != additive) {
      ck.expect(false, "sign equivalence violated at a=" + std::to_string(a) +
                           " b=" + std::to_string(b) + " c=" + std::to_string(c));
      return;
    }
  }
}

void correlated_lower_bound_inequality(Checker& ck) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    DgpConfig cfg;
    cfg.n = 200;
    cfg.k_covariates = 2 + int(seed % 2);
    cfg.confounder_treatment_strength = 1.0 + 0.3 * double(seed % 3);
    cfg.covariate_confounder_correlation = 0.3 + 0.05 * double(seed % 4);
    const Dataset data = generate(cfg, 9900 + seed);
    const ModelSpec model = dgp_model(cfg.k_covariates);

    std::vector<std::string> rest(model.covariates.begin() + 1,
                                  model.covariates.end());
    const double r2_d_xj = partial_r2(PartialQuery{data, "d", "x1", rest});
    const double k = partial_r2(PartialQuery{data, "d", "z", rest}) / r2_d_xj;
    const double r_zxj = partial_corr(PartialQuery{data, "z", "x1", rest});
    const double bound = lower_bound_diagnostic(k, r_zxj, cohen_f2(r2_d_xj));
    const double direct =
        partial_r2(PartialQuery{data, "d", "z", model.covariates});
    ck.expect(direct >= bound - 1e-12,
              "seed " + std::to_string(seed) + ": direct " +
                  std::to_string(direct) + " vs bound " + std::to_string(bound));
  }
}

}  // namespace

int main() {
  const auto suite_start = std::chrono::steady_clock::now();
  struct Criterion {
    std::string name;
    std::function<void(Checker&)> body;
  };
  const std::vector<Criterion> criteria = {
      {"darfur reproduction (published row, via the CLI)", darfur_reproduction},
      {"displacement identity on 100 synthetic processes", bias_identity},
      {"R2 decomposition suite, 200 instances", decomposition_suite},
      {"partial-R2 route agreement, 200 queries", route_agreement},
      {"robustness-value plug-back and bisection, 500 + 500 draws",
       rv_plugback_and_bisection},
      {"sign-case resolve suite (exact, lower-bound, sign equivalence)",
       sign_case_suite},
      {"correlated-confounder lower-bound inequality, 100 processes",
       correlated_lower_bound_inequality},
  };

  std::printf("[SKIP] external NLSY reproductions: source data is not "
              "redistributable; the synthetic suites below cover the same "
              "formulas\n");

  int failed = 0;
  for (const auto& criterion : criteria) {
    Checker ck;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criterion.body(ck);
    } catch (const std::exception& e) {
      ck.expect(false, std::string("unhandled exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (ck.failures == 0) {
      std::printf("[PASS] %s (%.2fs)\n", criterion.name.c_str(), elapsed);
    } else {
      ++failed;
      std::printf("[FAIL] %s (%.2fs, %d check(s) failed)\n",
                  criterion.name.c_str(), elapsed, ck.failures);
      for (const auto& m : ck.messages)
        std::printf("       - %s\n", m.c_str());
    }
  }

  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    suite_start)
          .count();
  if (total < 60.0) {
    std::printf("[PASS] suite runtime %.2fs (budget 60s)\n", total);
  } else {
    ++failed;
    std::printf("[FAIL] suite runtime %.2fs exceeds 60s\n", total);
  }

  std::printf("%d/%zu criteria failed\n", failed, criteria.size() + 1);
  return failed;
}
