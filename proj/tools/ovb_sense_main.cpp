#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ovb/csv_io.hpp"
#include "ovb/dgp.hpp"
#include "ovb/regress.hpp"
#include "ovb/report.hpp"

namespace {

// 0 success; 2 input or parse problem; 3 strict-mode unresolvable sign case;
// 4 numerical failure.
int exit_code_for(ovb::errc code) {
  switch (code) {
    case ovb::errc::io_error:
    case ovb::errc::parse_error:
    case ovb::errc::empty_dataset:
    case ovb::errc::unknown_column:
    case ovb::errc::invalid_spec:
    case ovb::errc::invalid_grid:
    case ovb::errc::invalid_q:
    case ovb::errc::invalid_alpha:
    case ovb::errc::multiple_benchmark_covariates:
    case ovb::errc::invalid_input:
      return 2;
    default:
      return 4;
  }
}

struct StrictSignCaseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& joined) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= joined.size()) {
    const std::size_t comma = joined.find(',', start);
    const std::string item = joined.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

ovb::SignCase parse_sign_case(const std::string& s) {
  if (s == "increase") return ovb::SignCase::increase;
  if (s == "reduce-opposite") return ovb::SignCase::reduce_opposite_sign;
  if (s == "reduce-same") return ovb::SignCase::reduce_same_sign;
  ovb::fail(ovb::errc::invalid_input, "unknown sign case '" + s + "'");
}

struct AnalyzeArgs {
  std::string data, outcome, treatment, covariates, benchmark;
  double kd = 1.0, ky = 1.0, q = 1.0, alpha = 0.05;
  std::string mode = "both";
  std::string sign_case = "increase";
  std::string format = "text";
  bool drop_na = false;
  bool strict = false;
};

void run_analyze(const AnalyzeArgs& args) {
  const ovb::Dataset data = ovb::load_csv(args.data, args.drop_na);
  ovb::ModelSpec model;
  model.outcome = args.outcome;
  model.treatment = args.treatment;
  model.covariates = split_list(args.covariates);

  ovb::BenchmarkSpec bench;
  bench.benchmark_covariates = split_list(args.benchmark);
  bench.k_d = args.kd;
  bench.k_y = args.ky;

  std::optional<ovb::BenchmarkSpec> bm_total, bm_partial;
  if (args.mode == "total" || args.mode == "both") {
    bm_total = bench;
    bm_total->mode = ovb::BenchmarkMode::total;
    if (bench.benchmark_covariates.size() > 1)
      ovb::fail(ovb::errc::multiple_benchmark_covariates,
                "total-R2 benchmarking takes a single covariate; rerun with "
                "--mode partial");
  }
  if (args.mode == "partial" || args.mode == "both") {
    bm_partial = bench;
    bm_partial->mode = ovb::BenchmarkMode::partial;
  }
  if (!bm_total && !bm_partial)
    ovb::fail(ovb::errc::invalid_input, "unknown mode '" + args.mode + "'");

  ovb::RobustnessQuery rq;
  rq.q = args.q;
  rq.alpha = args.alpha;
  const ovb::SignCase sc = parse_sign_case(args.sign_case);

  const ovb::SensitivityReport report =
      ovb::run_analysis(data, model, bm_total, bm_partial, rq, sc);
  if (args.strict && !report.sign_case_resolvable())
    throw StrictSignCaseFailure(
        "sign case '" + args.sign_case +
        "' admits no exact expression and --strict is set");

  if (args.format == "json") {
    std::cout << ovb::render_json(report).dump(2) << "\n";
  } else if (args.format == "text") {
    std::cout << ovb::render_text(report);
  } else {
    ovb::fail(ovb::errc::invalid_input, "unknown format '" + args.format + "'");
  }
}

struct ContourArgs {
  std::string data, outcome, treatment, covariates, out;
  int steps = 21;
  double max_r2d = 0.3, max_r2y = 0.3;
  double q = 1.0, alpha = 0.05;
  std::string direction = "reduce";
  bool drop_na = false;
};

void run_contour(const ContourArgs& args) {
  const ovb::Dataset data = ovb::load_csv(args.data, args.drop_na);
  ovb::ModelSpec model;
  model.outcome = args.outcome;
  model.treatment = args.treatment;
  model.covariates = split_list(args.covariates);

  const ovb::FitResult fit = ovb::fit_ols(data, model);
  const ovb::CoefSummary coef = ovb::coef_summary(fit, model.treatment);

  ovb::RobustnessQuery rq;
  rq.q = args.q;
  rq.alpha = args.alpha;
  if (args.direction == "reduce") {
    rq.reduce = true;
  } else if (args.direction == "amplify") {
    rq.reduce = false;
  } else {
    ovb::fail(ovb::errc::invalid_input,
              "direction must be 'reduce' or 'amplify'");
  }

  ovb::GridSpec grid{args.steps, args.steps, args.max_r2d, args.max_r2y};
  ovb::write_contour_csv(
      ovb::contour_grid(coef.estimate, coef.se, coef.df, grid, rq), args.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ovb-sense: how strong would an unobserved confounder have to be to "
      "overturn an OLS treatment effect?"};
  app.require_subcommand(1);

  AnalyzeArgs aa;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "robustness values, benchmarked bounds and verdicts");
  analyze->add_option("--data", aa.data, "input CSV")->required();
  analyze->add_option("--outcome", aa.outcome)->required();
  analyze->add_option("--treatment", aa.treatment)->required();
  analyze->add_option("--covariates", aa.covariates,
                      "comma-separated covariate columns")->required();
  analyze->add_option("--benchmark", aa.benchmark,
                      "comma-separated benchmark covariates")->required();
  analyze->add_option("--kd", aa.kd, "confounder/benchmark strength ratio (treatment)");
  analyze->add_option("--ky", aa.ky, "confounder/benchmark strength ratio (outcome)");
  analyze->add_option("--q", aa.q, "fraction of the estimate to explain away");
  analyze->add_option("--alpha", aa.alpha, "significance level");
  analyze->add_option("--mode", aa.mode, "total|partial|both");
  analyze->add_option("--sign-case", aa.sign_case,
                      "increase|reduce-opposite|reduce-same");
  analyze->add_option("--format", aa.format, "text|json");
  analyze->add_flag("--drop-na", aa.drop_na, "drop rows with unparseable cells");
  analyze->add_flag("--strict", aa.strict,
                    "fail on a sign case with no exact expression");
  analyze->callback([&aa] { run_analyze(aa); });

  ContourArgs ca;
  CLI::App* contour = app.add_subcommand(
      "contour", "export the bias-adjusted estimate/t surface as CSV");
  contour->add_option("--data", ca.data, "input CSV")->required();
  contour->add_option("--outcome", ca.outcome)->required();
  contour->add_option("--treatment", ca.treatment)->required();
  contour->add_option("--covariates", ca.covariates)->required();
  contour->add_option("--steps", ca.steps, "grid nodes per axis");
  contour->add_option("--max-r2d", ca.max_r2d, "largest treatment-confounder R2");
  contour->add_option("--max-r2y", ca.max_r2y, "largest outcome-confounder R2");
  contour->add_option("--out", ca.out, "output CSV path")->required();
  contour->add_option("--q", ca.q);
  contour->add_option("--alpha", ca.alpha);
  contour->add_option("--direction", ca.direction, "reduce|amplify");
  contour->add_flag("--drop-na", ca.drop_na);
  contour->callback([&ca] { run_contour(ca); });

  std::uint64_t seed = 42;
  std::string fixtures_out;
  CLI::App* fixtures = app.add_subcommand(
      "fixtures", "regenerate the synthetic fixture battery with manifest");
  fixtures->add_option("--seed", seed, "base seed");
  fixtures->add_option("--out", fixtures_out, "output directory")->required();
  fixtures->callback([&] { ovb::export_fixtures(fixtures_out, seed); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const StrictSignCaseFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ovb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
