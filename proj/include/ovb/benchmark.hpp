#pragma once

#include <string>
#include <vector>

#include "ovb/dataset.hpp"

namespace ovb {

enum class BenchmarkMode { total, partial };

// How the restricted estimate relates to the (unobservable) full-model
// estimate: the confounder inflates its magnitude, shrinks it past zero, or
// shrinks it without a sign change.
enum class SignCase { increase, reduce_opposite_sign, reduce_same_sign };

const char* sign_case_name(SignCase c) noexcept;
const char* benchmark_mode_name(BenchmarkMode m) noexcept;

// User judgment: the confounder explains at most k_d (k_y) times as much
// variation in the treatment (outcome) as the chosen benchmark covariates.
struct BenchmarkSpec {
  std::vector<std::string> benchmark_covariates;
  double k_d = 1.0;
  double k_y = 1.0;
  BenchmarkMode mode = BenchmarkMode::partial;

  void validate(const ModelSpec& model) const;
};

// First-stage output: bounded confounder strengths before the outcome
// strength is re-conditioned on the treatment.
struct RawBounds {
  double r2_dz_x = 0;
  double r2_yz_x = 0;
  bool clamped = false;  // a pre-cap value exceeded 1
};

struct ResolveResult {
  double r2_yz_dx = 0;
  bool exact = true;    // false: value is only a lower bound
  bool clamped = false; // negative numerator or unit cap fired
};

// Full benchmarking output for one mode.
struct BoundResult {
  double r2_dz_x = 0;
  double r2_yz_x = 0;
  double r2_yz_dx = 0;
  bool exact = true;
  bool clamped = false;
  SignCase sign_case = SignCase::increase;
};

// Total-R^2 comparison, defined for a single benchmark covariate X_j:
//   r2_dz_x = k_d * R2{D~X_j} / (1 - R2{D~X}),   analogously for the outcome.
RawBounds bound_total(const Dataset& data, const ModelSpec& model,
                      const BenchmarkSpec& bm);

// Partial-R^2 comparison with one benchmark covariate:
//   r2_dz_x = k_d * f2(R2{D~X_j|X_-j}),  f2(r) = r / (1 - r).
RawBounds bound_partial_single(const Dataset& data, const ModelSpec& model,
                               const BenchmarkSpec& bm);

// Partial-R^2 comparison with a benchmark group, using the group partial R^2.
RawBounds bound_partial_multiple(const Dataset& data, const ModelSpec& model,
                                 const BenchmarkSpec& bm);

// Whether the sign case admits an exact expression for the resolved
// outcome-confounder strength.
bool classify_sign_case(SignCase c) noexcept;

// Re-conditions the bounded outcome strength on the treatment:
//   numerator = max(0, sqrt(r2_yz_x) - sqrt(r2_yd_x * r2_dz_x))
//   r2_yz_dx  = min(1, numerator^2 / ((1 - r2_yd_x) * (1 - r2_dz_x))).
// Exact in the increase and reduce-opposite-sign cases; a lower bound in
// the reduce-same-sign case.
ResolveResult resolve_r2yz_dx(double r2_yz_x, double r2_dz_x, double r2_yd_x,
                              SignCase sign_case);

// Diagnostic lower bound on the treatment-confounder strength when the
// confounder correlates with the benchmark covariate (no orthogonality):
//   ((sqrt(k) - |r_zxj|)^2 / (1 - r_zxj^2)) * f2_bench.
// Only a lower bound exists in this regime, which is why the bounding
// exercise requires residualization.
double lower_bound_diagnostic(double k, double r_zxj_hypo, double f2_bench);

// Dispatches on mode and benchmark-set size, then resolves. r2_yd_x is the
// partial R^2 of outcome and treatment given the covariates.
BoundResult compute_bounds(const Dataset& data, const ModelSpec& model,
                           const BenchmarkSpec& bm, double r2_yd_x,
                           SignCase sign_case);

}  // namespace ovb
