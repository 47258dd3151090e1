#pragma once

// Shared generators and independent mini-oracles for the test suites. The
// oracles here deliberately avoid the library's QR path: plain normal
// equations in long double, textbook formulas, explicit sums.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ovb/dataset.hpp"

namespace ovbtest {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : rng_(seed) {}

  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

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

  long integer(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 rng_;
  double spare_ = 0;
  bool has_spare_ = false;
};

inline std::vector<double> normal_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

// y ~ columns with intercept, solved by normal equations in long double.
struct NormalEqFit {
  std::vector<double> beta;  // intercept first
  std::vector<double> se;
  double sigma2 = 0;
  long df = 0;
};

inline NormalEqFit normal_equations_fit(const std::vector<double>& y,
                                        const std::vector<std::vector<double>>& cols) {
  const std::size_t n = y.size();
  const std::size_t p = cols.size() + 1;
  std::vector<std::vector<long double>> xtx(p, std::vector<long double>(p, 0));
  std::vector<long double> xty(p, 0);
  const auto cell = [&](std::size_t j, std::size_t i) -> long double {
    return j == 0 ? 1.0L : static_cast<long double>(cols[j - 1][i]);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < p; ++a) {
      xty[a] += cell(a, i) * static_cast<long double>(y[i]);
      for (std::size_t b = 0; b < p; ++b) xtx[a][b] += cell(a, i) * cell(b, i);
    }

  // Gauss-Jordan inverse
  std::vector<std::vector<long double>> inv(p, std::vector<long double>(p, 0));
  for (std::size_t i = 0; i < p; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < p; ++r)
      if (std::abs((double)xtx[r][c]) > std::abs((double)xtx[pivot][c])) pivot = r;
    std::swap(xtx[c], xtx[pivot]);
    std::swap(inv[c], inv[pivot]);
    const long double d = xtx[c][c];
    for (std::size_t k = 0; k < p; ++k) {
      xtx[c][k] /= d;
      inv[c][k] /= d;
    }
    for (std::size_t r = 0; r < p; ++r) {
      if (r == c) continue;
      const long double f = xtx[r][c];
      for (std::size_t k = 0; k < p; ++k) {
        xtx[r][k] -= f * xtx[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }

  NormalEqFit fit;
  fit.beta.resize(p);
  for (std::size_t a = 0; a < p; ++a) {
    long double acc = 0;
    for (std::size_t b = 0; b < p; ++b) acc += inv[a][b] * xty[b];
    fit.beta[a] = static_cast<double>(acc);
  }
  long double rss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    long double fitval = 0;
    for (std::size_t a = 0; a < p; ++a) fitval += cell(a, i) * fit.beta[a];
    const long double r = y[i] - fitval;
    rss += r * r;
  }
  fit.df = static_cast<long>(n - p);
  fit.sigma2 = static_cast<double>(rss / fit.df);
  fit.se.resize(p);
  for (std::size_t a = 0; a < p; ++a)
    fit.se[a] = std::sqrt(fit.sigma2 * static_cast<double>(inv[a][a]));
  return fit;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

// Removes from `v` its sample projection onto the intercept and `onto`.
inline std::vector<double> gram_schmidt_residual(
    std::vector<double> v, const std::vector<std::vector<double>>& onto) {
  const std::size_t n = v.size();
  std::vector<std::vector<double>> basis;
  const auto project_out = [&](std::vector<double>& target) {
    for (const auto& b : basis) {
      double num = 0, den = 0;
      for (std::size_t i = 0; i < n; ++i) {
        num += target[i] * b[i];
        den += b[i] * b[i];
      }
      for (std::size_t i = 0; i < n; ++i) target[i] -= (num / den) * b[i];
    }
  };
  basis.push_back(std::vector<double>(n, 1.0));
  for (auto col : onto) {
    project_out(col);
    basis.push_back(std::move(col));
  }
  project_out(v);
  return v;
}

inline ovb::Dataset make_dataset(
    const std::vector<std::pair<std::string, std::vector<double>>>& cols) {
  ovb::Dataset data;
  for (const auto& [name, values] : cols) data.add_column(name, values);
  return data;
}

}  // namespace ovbtest
