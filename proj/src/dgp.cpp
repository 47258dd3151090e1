#include "ovb/dgp.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "ovb/csv_io.hpp"
#include "ovb/regress.hpp"
#include "ovb/sensitivity.hpp"

namespace ovb {

namespace {

// mt19937_64 with a Marsaglia polar transform. The engine's output sequence
// is fixed by the standard, so fixtures regenerate identically from a seed.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

  double uniform() {  // [0, 1), 53-bit resolution
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0;
  bool has_spare_ = false;
};

constexpr double kCovariateTreatmentCoef = 0.4;
constexpr double kCovariateOutcomeCoef = 0.4;

SignCase classify_realized(double tau_res, double tau_full) {
  if (std::abs(tau_res) >= std::abs(tau_full)) return SignCase::increase;
  const bool same_sign = (tau_res < 0.0) == (tau_full < 0.0);
  return same_sign ? SignCase::reduce_same_sign
                   : SignCase::reduce_opposite_sign;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const Eigen::VectorXd va = detail::to_eigen(a);
  const Eigen::VectorXd vb = detail::to_eigen(b);
  const Eigen::ArrayXd ca = va.array() - va.mean();
  const Eigen::ArrayXd cb = vb.array() - vb.mean();
  return (ca * cb).sum() / std::sqrt(ca.square().sum() * cb.square().sum());
}

}  // namespace

void DgpConfig::validate() const {
  if (k_covariates < 0) fail(errc::invalid_input, "k_covariates must be >= 0");
  if (n <= k_covariates + 3)
    fail(errc::invalid_input, "need n > k_covariates + 3");
  if (!(noise_scale > 0.0)) fail(errc::invalid_input, "noise_scale must be > 0");
  if (!std::isfinite(covariate_confounder_correlation) ||
      std::abs(covariate_confounder_correlation) >= 1.0)
    fail(errc::invalid_input, "covariate_confounder_correlation must lie in (-1, 1)");
  if (sign_regime) {
    if (treatment_effect == 0.0)
      fail(errc::invalid_input, "sign-regime engineering needs a nonzero treatment effect");
    if (confounder_treatment_strength == 0.0)
      fail(errc::invalid_input,
           "sign-regime engineering needs a nonzero confounder-treatment strength");
  }
}

Dataset generate(const DgpConfig& cfg, std::uint64_t seed,
                 int max_attempts) {
  cfg.validate();
  GaussianSampler rng(seed);

  const long n = cfg.n;
  const int k = cfg.k_covariates;
  const double rho = cfg.covariate_confounder_correlation;
  const double tau = cfg.treatment_effect;

  double a_t = cfg.confounder_treatment_strength;
  double a_o = cfg.confounder_outcome_strength;
  if (cfg.sign_regime) {
    a_t = std::abs(a_t);
    const double sign_tau = tau < 0.0 ? -1.0 : 1.0;
    const double vz = 1.0 - rho * rho;
    // population coefficient of z when regressing it on (d, X); the induced
    // bias is roughly a_o * delta, which the regimes steer
    const double delta = std::max(a_t * vz / (a_t * a_t * vz + 1.0), 1e-3);
    switch (*cfg.sign_regime) {
      case SignCase::increase:
        a_o = sign_tau * std::max(std::abs(a_o), 0.2);
        break;
      case SignCase::reduce_same_sign:
        a_o = -sign_tau * 0.45 * std::abs(tau) / delta;
        break;
      case SignCase::reduce_opposite_sign:
        a_o = -sign_tau * 1.6 * std::abs(tau) / delta;
        break;
    }
  }

  if (max_attempts < 1) fail(errc::invalid_input, "max_attempts must be >= 1");
  const int attempts = cfg.sign_regime ? max_attempts : 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Eigen::MatrixXd x(n, k);
    for (long i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j) x(i, j) = rng.normal();

    Eigen::VectorXd z(n);
    for (long i = 0; i < n; ++i) z(i) = rng.normal();
    if (k > 0 && rho != 0.0) {
      const Eigen::VectorXd shared = x.rowwise().sum() / std::sqrt(double(k));
      z = rho * shared + std::sqrt(1.0 - rho * rho) * z;
    }
    if (cfg.orthogonalize_z)
      z = detail::fit_raw(z, x, /*intercept=*/true).residuals;

    Eigen::VectorXd d(n), y(n);
    for (long i = 0; i < n; ++i) d(i) = rng.normal();
    d += a_t * z;
    if (k > 0) d += kCovariateTreatmentCoef * x.rowwise().sum();
    for (long i = 0; i < n; ++i) y(i) = cfg.noise_scale * rng.normal();
    y += tau * d + a_o * z;
    if (k > 0) y += kCovariateOutcomeCoef * x.rowwise().sum();

    if (cfg.sign_regime) {
      Eigen::MatrixXd regs(n, k + 1);
      regs.col(0) = d;
      if (k > 0) regs.rightCols(k) = x;
      const double tau_res = detail::fit_raw(y, regs, true).beta(1);
      Eigen::MatrixXd regs_full(n, k + 2);
      regs_full.col(0) = d;
      if (k > 0) regs_full.middleCols(1, k) = x;
      regs_full.col(k + 1) = z;
      const double tau_full = detail::fit_raw(y, regs_full, true).beta(1);
      if (classify_realized(tau_res, tau_full) != *cfg.sign_regime) continue;
    }

    Dataset data;
    data.add_column("y", {y.data(), y.data() + n});
    data.add_column("d", {d.data(), d.data() + n});
    data.add_column("z", {z.data(), z.data() + n});
    for (int j = 0; j < k; ++j) {
      Eigen::VectorXd col = x.col(j);
      data.add_column("x" + std::to_string(j + 1), {col.data(), col.data() + n});
    }
    return data;
  }
  fail(errc::regime_unreachable,
       std::string("could not realize sign regime '") +
           sign_case_name(*cfg.sign_regime) + "' in " +
           std::to_string(attempts) + " attempts");
}

OracleQuantities oracle_all(const Dataset& data, const ModelSpec& spec,
                            const std::string& z) {
  spec.validate(data);
  if (!data.has_column(z)) fail(errc::unknown_column, "no column named '" + z + "'");
  if (z == spec.outcome || z == spec.treatment)
    fail(errc::invalid_spec, "confounder column clashes with the model");
  for (const auto& c : spec.covariates)
    if (c == z) fail(errc::invalid_spec, "confounder column listed as covariate");

  OracleQuantities o;
  const FitResult restricted = fit_ols(data, spec);
  ModelSpec full_spec = spec;
  full_spec.covariates.push_back(z);
  const FitResult full = fit_ols(data, full_spec);

  const CoefSummary cres = coef_summary(restricted, spec.treatment);
  const CoefSummary cfull = coef_summary(full, spec.treatment);
  o.tau_res = cres.estimate;
  o.se_res = cres.se;
  o.t_res = cres.t;
  o.df_res = cres.df;
  o.tau_full = cfull.estimate;
  o.se_full = cfull.se;
  o.df_full = cfull.df;
  o.bias = o.tau_res - o.tau_full;
  o.relative_bias = std::abs(o.bias) / std::abs(o.tau_res);
  o.realized_sign_case = classify_realized(o.tau_res, o.tau_full);

  const auto& X = spec.covariates;
  std::vector<std::string> dx = {spec.treatment};
  dx.insert(dx.end(), X.begin(), X.end());

  const auto res_y_x = residualize(data, spec.outcome, X);
  const auto res_d_x = residualize(data, spec.treatment, X);
  const auto res_z_x = residualize(data, z, X);
  o.r_dz_x = pearson(res_d_x, res_z_x);
  o.r_yz_x = pearson(res_y_x, res_z_x);
  o.r_yd_x = pearson(res_y_x, res_d_x);
  o.r_yz_dx = pearson(residualize(data, spec.outcome, dx),
                      residualize(data, z, dx));
  o.r2_dz_x = o.r_dz_x * o.r_dz_x;
  o.r2_yz_x = o.r_yz_x * o.r_yz_x;
  o.r2_yd_x = o.r_yd_x * o.r_yd_x;
  o.r2_yz_dx = o.r_yz_dx * o.r_yz_dx;

  // Remainders through the incremental route, which never touches the
  // residualized regressions above.
  std::vector<std::string> xz(X.begin(), X.end());
  xz.push_back(z);
  const std::string just_z[] = {z};
  const double r2_y_x =
      X.empty() ? 0.0 : fit_columns(data, spec.outcome, X, true).total_r2;
  o.eta_y = fit_columns(data, spec.outcome, xz, true).total_r2 - r2_y_x -
            fit_columns(data, spec.outcome, just_z, true).total_r2;
  const double r2_d_x =
      X.empty() ? 0.0 : fit_columns(data, spec.treatment, X, true).total_r2;
  o.eta_d = fit_columns(data, spec.treatment, xz, true).total_r2 - r2_d_x -
            fit_columns(data, spec.treatment, just_z, true).total_r2;
  return o;
}

double oracle_rv(double t_res, long df, double q) {
  if (!std::isfinite(q) || q <= 0.0 || q > 1.0)
    fail(errc::invalid_q, "q must lie in (0, 1]");
  if (df < 1) fail(errc::invalid_input, "df must be at least 1");
  if (t_res == 0.0) return 0.0;

  const double r_yd =
      t_res / std::sqrt(t_res * t_res + static_cast<double>(df));
  const auto rel_bias_at = [&](double x) {
    return relative_bias(std::sqrt(x), std::sqrt(x), r_yd);
  };

  double lo = 0.0, hi = 1.0 - 1e-12;
  if (rel_bias_at(hi) < q)
    fail(errc::bracket_failure, "relative bias stays below q on [0, 1)");
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (rel_bias_at(mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

nlohmann::json config_json(const DgpConfig& cfg) {
  nlohmann::json j{
      {"n", cfg.n},
      {"k_covariates", cfg.k_covariates},
      {"confounder_treatment_strength", cfg.confounder_treatment_strength},
      {"confounder_outcome_strength", cfg.confounder_outcome_strength},
      {"covariate_confounder_correlation", cfg.covariate_confounder_correlation},
      {"treatment_effect", cfg.treatment_effect},
      {"noise_scale", cfg.noise_scale},
      {"orthogonalize_z", cfg.orthogonalize_z},
  };
  j["sign_regime"] =
      cfg.sign_regime ? nlohmann::json(sign_case_name(*cfg.sign_regime))
                      : nlohmann::json(nullptr);
  return j;
}

nlohmann::json expected_json(const OracleQuantities& o) {
  return nlohmann::json{
      {"tau_res", o.tau_res},       {"se_res", o.se_res},
      {"t_res", o.t_res},           {"df_res", o.df_res},
      {"tau_full", o.tau_full},     {"se_full", o.se_full},
      {"df_full", o.df_full},       {"bias", o.bias},
      {"relative_bias", o.relative_bias},
      {"r_dz_x", o.r_dz_x},         {"r_yz_x", o.r_yz_x},
      {"r_yz_dx", o.r_yz_dx},       {"r_yd_x", o.r_yd_x},
      {"r2_dz_x", o.r2_dz_x},       {"r2_yz_x", o.r2_yz_x},
      {"r2_yz_dx", o.r2_yz_dx},     {"r2_yd_x", o.r2_yd_x},
      {"eta_y", o.eta_y},           {"eta_d", o.eta_d},
      {"sign_case", sign_case_name(o.realized_sign_case)},
  };
}

}  // namespace

void export_fixtures(const std::string& dir, std::uint64_t seed) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(errc::io_error, "cannot create directory '" + dir + "'");

  struct Entry {
    const char* name;
    DgpConfig cfg;
  };
  const Entry battery[] = {
      {"orthogonal_increase",
       {.n = 200, .k_covariates = 3, .confounder_treatment_strength = 0.6,
        .confounder_outcome_strength = 0.6,
        .covariate_confounder_correlation = 0.35, .treatment_effect = 1.0,
        .noise_scale = 1.0, .orthogonalize_z = true,
        .sign_regime = SignCase::increase}},
      {"correlated_increase",
       {.n = 250, .k_covariates = 2, .confounder_treatment_strength = 0.7,
        .confounder_outcome_strength = 0.5,
        .covariate_confounder_correlation = 0.4, .treatment_effect = 1.0,
        .noise_scale = 1.0, .orthogonalize_z = false,
        .sign_regime = SignCase::increase}},
      {"reduce_same_sign",
       {.n = 200, .k_covariates = 2, .confounder_treatment_strength = 0.6,
        .confounder_outcome_strength = 0.5,
        .covariate_confounder_correlation = 0.2, .treatment_effect = 1.0,
        .noise_scale = 1.0, .orthogonalize_z = false,
        .sign_regime = SignCase::reduce_same_sign}},
      {"reduce_opposite_sign",
       {.n = 200, .k_covariates = 2, .confounder_treatment_strength = 0.6,
        .confounder_outcome_strength = 0.5,
        .covariate_confounder_correlation = 0.2, .treatment_effect = 1.0,
        .noise_scale = 1.0, .orthogonalize_z = false,
        .sign_regime = SignCase::reduce_opposite_sign}},
      {"null_confounder",
       {.n = 150, .k_covariates = 1, .confounder_treatment_strength = 0.0,
        .confounder_outcome_strength = 0.0,
        .covariate_confounder_correlation = 0.0, .treatment_effect = 0.8,
        .noise_scale = 1.0, .orthogonalize_z = false, .sign_regime = {}}},
  };

  nlohmann::json manifest;
  manifest["generator"] = "mt19937_64 + polar-method Gaussian";
  manifest["base_seed"] = seed;
  manifest["fixtures"] = nlohmann::json::array();

  std::uint64_t fixture_seed = seed;
  for (const Entry& e : battery) {
    ++fixture_seed;
    const Dataset data = generate(e.cfg, fixture_seed);
    const std::string file = std::string("dgp_") + e.name + ".csv";
    write_csv(data, (fs::path(dir) / file).string());

    ModelSpec spec;
    spec.outcome = "y";
    spec.treatment = "d";
    for (int j = 0; j < e.cfg.k_covariates; ++j)
      spec.covariates.push_back("x" + std::to_string(j + 1));

    nlohmann::json entry;
    entry["name"] = e.name;
    entry["file"] = file;
    entry["seed"] = fixture_seed;
    entry["config"] = config_json(e.cfg);
    entry["model"] = {{"outcome", spec.outcome},
                      {"treatment", spec.treatment},
                      {"covariates", spec.covariates},
                      {"confounder", "z"}};
    entry["expected"] = expected_json(oracle_all(data, spec, "z"));
    manifest["fixtures"].push_back(std::move(entry));
  }

  std::ofstream out(fs::path(dir) / "manifest.json");
  if (!out) fail(errc::io_error, "cannot write manifest in '" + dir + "'");
  out << manifest.dump(2) << "\n";
}

}  // namespace ovb
