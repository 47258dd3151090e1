#pragma once

#include <Eigen/Dense>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ovb/dataset.hpp"

namespace ovb {

// Name under which the intercept coefficient is reported.
inline constexpr const char* kInterceptName = "(intercept)";

// Relative singular-value ratio below which a design matrix is treated as
// rank deficient.
inline constexpr double kRankTol = 1e-10;

struct FitResult {
  std::vector<std::string> regressor_names;  // reporting order, intercept first
  std::map<std::string, double> coefficients;
  std::map<std::string, double> standard_errors;
  std::vector<double> residuals;
  long df = 0;          // residual degrees of freedom, n - #regressors
  double total_r2 = 0;  // centered when an intercept is present
};

struct CoefSummary {
  double estimate = 0;
  double se = 0;
  double t = 0;
  long df = 0;
};

// Least-squares fit of outcome ~ treatment + covariates. Solved through a
// Householder QR decomposition; rank is judged on the singular values of
// the triangular factor.
FitResult fit_ols(const Dataset& data, const ModelSpec& spec);

// Same solver for an arbitrary outcome/regressor selection. An empty
// regressor list with an intercept fits the mean.
FitResult fit_columns(const Dataset& data, const std::string& outcome,
                      std::span<const std::string> regressors, bool intercept);

// Residuals of `target` after projecting onto `on` (plus intercept when
// requested): target - fitted.
std::vector<double> residualize(const Dataset& data, const std::string& target,
                                std::span<const std::string> on,
                                bool intercept = true);

CoefSummary coef_summary(const FitResult& fit, const std::string& name);

namespace detail {

// Matrix-level fit shared by the named-column entry points.
struct RawFit {
  Eigen::VectorXd beta;
  Eigen::VectorXd residuals;
  Eigen::VectorXd se;
  long df = 0;
  double total_r2 = 0;
  double sigma2 = 0;
};

// `regressors` excludes the intercept column; it is prepended when
// `intercept` is set. Throws insufficient_rows / rank_deficient.
RawFit fit_raw(const Eigen::Ref<const Eigen::VectorXd>& y,
               const Eigen::Ref<const Eigen::MatrixXd>& regressors,
               bool intercept);

Eigen::VectorXd to_eigen(const std::vector<double>& v);
Eigen::MatrixXd design_from(const Dataset& data,
                            std::span<const std::string> columns);

}  // namespace detail

}  // namespace ovb
