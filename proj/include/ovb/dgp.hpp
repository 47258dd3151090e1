#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ovb/benchmark.hpp"
#include "ovb/dataset.hpp"

namespace ovb {

// Synthetic linear process with an observable confounder column z, so every
// closed-form sensitivity quantity can be checked against two explicit
// regressions.
struct DgpConfig {
  long n = 200;
  int k_covariates = 2;
  double confounder_treatment_strength = 0.5;
  double confounder_outcome_strength = 0.5;
  double covariate_confounder_correlation = 0.0;  // in (-1, 1)
  double treatment_effect = 1.0;
  double noise_scale = 1.0;
  bool orthogonalize_z = false;
  // When set, the confounder coefficients are arranged (and samples redrawn
  // up to the retry budget) so the fitted restricted/full estimates realize
  // this regime.
  std::optional<SignCase> sign_regime;

  void validate() const;
};

inline constexpr int kRegimeRetryBudget = 1000;

// Deterministic for a fixed (cfg, seed); columns y, d, z, x1..xk. Uses
// mt19937_64 with a polar-method Gaussian transform, so regeneration on any
// platform yields the same stream. Throws regime_unreachable once
// max_attempts redraws fail to land in the requested sign regime.
Dataset generate(const DgpConfig& cfg, std::uint64_t seed,
                 int max_attempts = kRegimeRetryBudget);

// Everything below is computed only through fit_columns/residualize plus a
// local correlation; none of the closed forms under test are touched.
struct OracleQuantities {
  double tau_res = 0, se_res = 0, t_res = 0;
  double tau_full = 0, se_full = 0;
  long df_res = 0, df_full = 0;
  double bias = 0;           // tau_res - tau_full, signed
  double relative_bias = 0;  // |bias| / |tau_res|
  // signed partial correlations and their squares
  double r_dz_x = 0, r_yz_x = 0, r_yz_dx = 0, r_yd_x = 0;
  double r2_dz_x = 0, r2_yz_x = 0, r2_yz_dx = 0, r2_yd_x = 0;
  double eta_y = 0, eta_d = 0;  // decomposition remainders for y and d
  SignCase realized_sign_case = SignCase::increase;
};

OracleQuantities oracle_all(const Dataset& data, const ModelSpec& spec,
                            const std::string& z);

// Independent robustness-value check: bisection on the equal-strength
// relative bias until it equals q, bracket tolerance 1e-10.
double oracle_rv(double t_res, long df, double q);

// Writes the standard fixture battery (CSV per process plus manifest.json
// capturing seed, config and oracle quantities) into `dir`.
void export_fixtures(const std::string& dir, std::uint64_t seed);

}  // namespace ovb
