#include "ovb/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "ovb/partial_r2.hpp"
#include "ovb/regress.hpp"

namespace ovb {

namespace {

constexpr double kZeroAssocTol = 1e-14;

void check_k(double k, const char* name) {
  if (!std::isfinite(k) || k < 0.0)
    fail(errc::invalid_input, std::string(name) + " must be finite and >= 0");
}

double cap(double value, bool& clamped) {
  if (value > 1.0) {
    clamped = true;
    return 1.0;
  }
  return value;
}

// Covariates of `model` with the benchmark set removed.
std::vector<std::string> remaining_covariates(const ModelSpec& model,
                                              const BenchmarkSpec& bm) {
  std::unordered_set<std::string> bench(bm.benchmark_covariates.begin(),
                                        bm.benchmark_covariates.end());
  std::vector<std::string> rest;
  for (const auto& c : model.covariates)
    if (!bench.count(c)) rest.push_back(c);
  return rest;
}

double benchmark_partial_r2(const Dataset& data, const std::string& left,
                            const BenchmarkSpec& bm,
                            const std::vector<std::string>& rest) {
  const double r2 =
      partial_r2_group(data, left, bm.benchmark_covariates, rest);
  if (r2 <= kZeroAssocTol)
    fail(errc::zero_benchmark_association,
         "benchmark covariates explain none of '" + left + "'");
  if (1.0 - r2 <= kSaturationTol)
    fail(errc::saturated_benchmark,
         "benchmark covariates explain '" + left + "' completely");
  return r2;
}

}  // namespace

const char* sign_case_name(SignCase c) noexcept {
  switch (c) {
    case SignCase::increase: return "increase";
    case SignCase::reduce_opposite_sign: return "reduce-opposite";
    case SignCase::reduce_same_sign: return "reduce-same";
  }
  return "?";
}

const char* benchmark_mode_name(BenchmarkMode m) noexcept {
  return m == BenchmarkMode::total ? "total" : "partial";
}

void BenchmarkSpec::validate(const ModelSpec& model) const {
  if (benchmark_covariates.empty())
    fail(errc::invalid_spec, "benchmark covariate list is empty");
  std::unordered_set<std::string> in_model(model.covariates.begin(),
                                           model.covariates.end());
  std::unordered_set<std::string> seen;
  for (const auto& c : benchmark_covariates) {
    if (!in_model.count(c))
      fail(errc::invalid_spec,
           "benchmark covariate '" + c + "' is not a model covariate");
    if (!seen.insert(c).second)
      fail(errc::invalid_spec, "benchmark covariate '" + c + "' listed twice");
  }
  check_k(k_d, "k_d");
  check_k(k_y, "k_y");
}

RawBounds bound_total(const Dataset& data, const ModelSpec& model,
                      const BenchmarkSpec& bm) {
  bm.validate(model);
  if (bm.benchmark_covariates.size() != 1)
    fail(errc::multiple_benchmark_covariates,
         "total-R2 benchmarking is defined for a single covariate");
  const std::string& xj = bm.benchmark_covariates.front();
  const std::string just_xj[] = {xj};

  RawBounds out;
  for (int side = 0; side < 2; ++side) {
    const std::string& target = side == 0 ? model.treatment : model.outcome;
    const double k = side == 0 ? bm.k_d : bm.k_y;
    const double r2_xj =
        fit_columns(data, target, just_xj, /*intercept=*/true).total_r2;
    if (r2_xj <= kZeroAssocTol)
      fail(errc::zero_benchmark_association,
           "'" + xj + "' explains none of '" + target + "'");
    const double r2_all =
        fit_columns(data, target, model.covariates, /*intercept=*/true).total_r2;
    if (1.0 - r2_all <= kSaturationTol)
      fail(errc::saturated_model,
           "covariates explain '" + target + "' completely");
    const double bound = k * r2_xj / (1.0 - r2_all);
    (side == 0 ? out.r2_dz_x : out.r2_yz_x) = cap(bound, out.clamped);
  }
  return out;
}

RawBounds bound_partial_single(const Dataset& data, const ModelSpec& model,
                               const BenchmarkSpec& bm) {
  bm.validate(model);
  if (bm.benchmark_covariates.size() != 1)
    fail(errc::invalid_spec, "expected exactly one benchmark covariate");
  return bound_partial_multiple(data, model, bm);
}

RawBounds bound_partial_multiple(const Dataset& data, const ModelSpec& model,
                                 const BenchmarkSpec& bm) {
  bm.validate(model);
  const std::vector<std::string> rest = remaining_covariates(model, bm);

  RawBounds out;
  const double r2_d = benchmark_partial_r2(data, model.treatment, bm, rest);
  out.r2_dz_x = cap(bm.k_d * cohen_f2(r2_d), out.clamped);
  const double r2_y = benchmark_partial_r2(data, model.outcome, bm, rest);
  out.r2_yz_x = cap(bm.k_y * cohen_f2(r2_y), out.clamped);
  return out;
}

bool classify_sign_case(SignCase c) noexcept {
  return c != SignCase::reduce_same_sign;
}

ResolveResult resolve_r2yz_dx(double r2_yz_x, double r2_dz_x, double r2_yd_x,
                              SignCase sign_case) {
  for (double v : {r2_yz_x, r2_dz_x, r2_yd_x})
    if (!std::isfinite(v) || v < 0.0 || v >= 1.0)
      fail(errc::invalid_input, "resolve inputs must lie in [0, 1)");

  ResolveResult res;
  const double raw_num = std::sqrt(r2_yz_x) - std::sqrt(r2_yd_x * r2_dz_x);
  res.clamped = raw_num < 0.0;
  const double num = std::max(0.0, raw_num);
  const double value = num * num / ((1.0 - r2_yd_x) * (1.0 - r2_dz_x));
  if (value > 1.0) res.clamped = true;
  res.r2_yz_dx = std::min(1.0, value);
  res.exact = classify_sign_case(sign_case);
  return res;
}

double lower_bound_diagnostic(double k, double r_zxj_hypo, double f2_bench) {
  check_k(k, "k");
  if (!std::isfinite(f2_bench) || f2_bench < 0.0)
    fail(errc::invalid_input, "f2_bench must be finite and >= 0");
  if (!std::isfinite(r_zxj_hypo) || std::abs(r_zxj_hypo) >= 1.0)
    fail(errc::invalid_correlation, "|r_zxj_hypo| must be below 1");
  const double num = std::sqrt(k) - std::abs(r_zxj_hypo);
  const double alpha = num * num / (1.0 - r_zxj_hypo * r_zxj_hypo);
  return alpha * f2_bench;
}

BoundResult compute_bounds(const Dataset& data, const ModelSpec& model,
                           const BenchmarkSpec& bm, double r2_yd_x,
                           SignCase sign_case) {
  RawBounds raw;
  if (bm.mode == BenchmarkMode::total) {
    raw = bound_total(data, model, bm);
  } else if (bm.benchmark_covariates.size() == 1) {
    raw = bound_partial_single(data, model, bm);
  } else {
    raw = bound_partial_multiple(data, model, bm);
  }
  if (raw.r2_dz_x >= 1.0 || raw.r2_yz_x >= 1.0)
    fail(errc::invalid_input,
         "benchmarked bound reached 1; the resolve step needs strengths "
         "strictly below 1 (reduce k_d/k_y)");
  const ResolveResult res =
      resolve_r2yz_dx(raw.r2_yz_x, raw.r2_dz_x, r2_yd_x, sign_case);

  BoundResult out;
  out.r2_dz_x = raw.r2_dz_x;
  out.r2_yz_x = raw.r2_yz_x;
  out.r2_yz_dx = res.r2_yz_dx;
  out.exact = res.exact;
  out.clamped = raw.clamped || res.clamped;
  out.sign_case = sign_case;
  return out;
}

}  // namespace ovb
