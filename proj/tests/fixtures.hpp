#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "ccbc/numerics.hpp"
#include "ccbc/problem.hpp"

namespace fixtures {

// Unit-side triangle centred at the origin, vertices at radius 1/sqrt(3).
inline ccbc::Configuration triangle(double phase = 0.0) {
  const double r = 1.0 / std::sqrt(3.0);
  std::vector<double> c;
  for (int k = 0; k < 3; ++k) {
    const double a = phase + 2.0 * std::numbers::pi * k / 3.0;
    c.push_back(r * std::cos(a));
    c.push_back(r * std::sin(a));
  }
  return ccbc::Configuration(c);
}

inline ccbc::Configuration euler() {
  const double a = 1.0 / std::sqrt(2.0);
  return ccbc::Configuration({-a, 0.0, 0.0, 0.0, a, 0.0});
}

// Random collision-free configuration with coordinates in [-1, 1].
inline ccbc::Configuration random_config(int n, std::mt19937_64& rng, double min_sep = 0.05) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    std::vector<double> c(2 * static_cast<std::size_t>(n));
    for (auto& v : c) v = u(rng);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j)
        ok = std::hypot(c[2 * i] - c[2 * j], c[2 * i + 1] - c[2 * j + 1]) > min_sep;
    if (ok) return ccbc::Configuration(c);
  }
}

// Central-difference Jacobian of a vector map.
inline ccbc::Matrix fd_jacobian(const std::function<std::vector<double>(std::span<const double>)>& f,
                                std::span<const double> x, double h = 1e-6) {
  const auto f0 = f(x);
  ccbc::Matrix j(f0.size(), x.size());
  std::vector<double> xp(x.begin(), x.end());
  for (std::size_t c = 0; c < x.size(); ++c) {
    const double keep = xp[c];
    xp[c] = keep + h;
    const auto fp = f(xp);
    xp[c] = keep - h;
    const auto fm = f(xp);
    xp[c] = keep;
    for (std::size_t r = 0; r < f0.size(); ++r) j(r, c) = (fp[r] - fm[r]) / (2.0 * h);
  }
  return j;
}

// max |a - b| / max(1, max |b|)
inline double rel_diff(const ccbc::Matrix& a, const ccbc::Matrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d / std::max(1.0, b.max_abs());
}

}  // namespace fixtures
