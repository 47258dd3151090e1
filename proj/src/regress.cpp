#include "ovb/regress.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

namespace ovb {

namespace detail {

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

Eigen::MatrixXd design_from(const Dataset& data,
                            std::span<const std::string> columns) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(data.n_rows()),
                    static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j)
    m.col(static_cast<Eigen::Index>(j)) = to_eigen(data.column(columns[j]));
  return m;
}

RawFit fit_raw(const Eigen::Ref<const Eigen::VectorXd>& y,
               const Eigen::Ref<const Eigen::MatrixXd>& regressors,
               bool intercept) {
  const Eigen::Index n = y.size();
  const Eigen::Index p = regressors.cols() + (intercept ? 1 : 0);
  if (p == 0) fail(errc::invalid_input, "no regressors and no intercept");
  if (n <= p)
    fail(errc::insufficient_rows, std::to_string(n) + " rows for " +
                                      std::to_string(p) + " regressors");

  Eigen::MatrixXd X(n, p);
  if (intercept) X.col(0).setOnes();
  if (regressors.cols() > 0) X.rightCols(regressors.cols()) = regressors;

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
  Eigen::MatrixXd R = qr.matrixQR()
                          .topRows(p)
                          .template triangularView<Eigen::Upper>();

  // The triangular factor shares the design's singular values, so rank is
  // judged there instead of on the full matrix.
  Eigen::BDCSVD<Eigen::MatrixXd> svd(R);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smax > 0) || smin / smax <= kRankTol)
    fail(errc::rank_deficient,
         "design matrix singular-value ratio " +
             std::to_string(smax > 0 ? smin / smax : 0.0) + " below threshold");

  RawFit fit;
  fit.beta = qr.solve(y);
  fit.residuals = y - X * fit.beta;
  fit.df = static_cast<long>(n - p);

  const double rss = fit.residuals.squaredNorm();
  fit.sigma2 = rss / static_cast<double>(fit.df);

  Eigen::MatrixXd rinv =
      R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  fit.se = (rinv.rowwise().squaredNorm() * fit.sigma2).cwiseSqrt();

  double tss;
  if (intercept) {
    tss = (y.array() - y.mean()).matrix().squaredNorm();
  } else {
    tss = y.squaredNorm();
  }
  fit.total_r2 = tss > 0 ? std::clamp(1.0 - rss / tss, 0.0, 1.0) : 1.0;
  return fit;
}

}  // namespace detail

FitResult fit_columns(const Dataset& data, const std::string& outcome,
                      std::span<const std::string> regressors, bool intercept) {
  const Eigen::VectorXd y = detail::to_eigen(data.column(outcome));
  const Eigen::MatrixXd X = detail::design_from(data, regressors);
  detail::RawFit raw = detail::fit_raw(y, X, intercept);

  FitResult out;
  if (intercept) out.regressor_names.emplace_back(kInterceptName);
  out.regressor_names.insert(out.regressor_names.end(), regressors.begin(),
                             regressors.end());
  for (std::size_t j = 0; j < out.regressor_names.size(); ++j) {
    out.coefficients[out.regressor_names[j]] =
        raw.beta(static_cast<Eigen::Index>(j));
    out.standard_errors[out.regressor_names[j]] =
        raw.se(static_cast<Eigen::Index>(j));
  }
  out.residuals.assign(raw.residuals.data(),
                       raw.residuals.data() + raw.residuals.size());
  out.df = raw.df;
  out.total_r2 = raw.total_r2;
  return out;
}

FitResult fit_ols(const Dataset& data, const ModelSpec& spec) {
  spec.validate(data);
  std::vector<std::string> regressors;
  regressors.reserve(spec.covariates.size() + 1);
  regressors.push_back(spec.treatment);
  regressors.insert(regressors.end(), spec.covariates.begin(),
                    spec.covariates.end());
  return fit_columns(data, spec.outcome, regressors, spec.intercept);
}

std::vector<double> residualize(const Dataset& data, const std::string& target,
                                std::span<const std::string> on,
                                bool intercept) {
  const Eigen::VectorXd y = detail::to_eigen(data.column(target));
  const Eigen::MatrixXd X = detail::design_from(data, on);
  detail::RawFit raw = detail::fit_raw(y, X, intercept);
  return {raw.residuals.data(), raw.residuals.data() + raw.residuals.size()};
}

CoefSummary coef_summary(const FitResult& fit, const std::string& name) {
  auto it = fit.coefficients.find(name);
  if (it == fit.coefficients.end())
    fail(errc::unknown_column, "'" + name + "' is not a regressor in this fit");
  CoefSummary s;
  s.estimate = it->second;
  s.se = fit.standard_errors.at(name);
  s.t = s.estimate / s.se;
  s.df = fit.df;
  return s;
}

}  // namespace ovb
