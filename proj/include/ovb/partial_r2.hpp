#pragma once

#include <span>
#include <string>
#include <vector>

#include "ovb/dataset.hpp"

namespace ovb {

// Conditioning saturation threshold: 1 - R^2 at or below this is an error,
// never a clamp.
inline constexpr double kSaturationTol = 1e-12;

// Share of left's residual variance explained by right once `given` has
// been partialled out.
struct PartialQuery {
  const Dataset& data;
  std::string left;
  std::string right;
  std::vector<std::string> given;
};

// Incremental-R^2 route: (R2{left~right+given} - R2{left~given}) /
// (1 - R2{left~given}). Canonical for magnitudes.
double partial_r2(const PartialQuery& q);

// Same quantity with a block of columns on the right-hand side.
double partial_r2_group(const Dataset& data, const std::string& left,
                        std::span<const std::string> right_block,
                        std::span<const std::string> given);

// Signed residual-correlation route; its square agrees with partial_r2.
double partial_corr(const PartialQuery& q);

// Removes one variable from the conditioning set of a partial correlation:
// (r_yz_x - r_yd_x * r_dz_x) / (sqrt(1 - r_yd_x^2) * sqrt(1 - r_dz_x^2)).
double recursive_partial_corr(double r_yz_x, double r_yd_x, double r_dz_x);

// Variance-explained odds r2 / (1 - r2).
double cohen_f2(double r2);

// Decomposition remainder R2{y~z_perp_x} - R2{y~z}; zero exactly when z is
// orthogonal to x and the intercept.
double eta(const Dataset& data, const std::string& y, const std::string& z,
           std::span<const std::string> x);

}  // namespace ovb
