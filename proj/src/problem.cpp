#include "ccbc/problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccbc/error.hpp"

namespace ccbc {

bool Box::contains(std::span<const double> point) const {
  if (point.size() != lower.size()) return false;
  for (std::size_t k = 0; k < point.size(); ++k) {
    if (!(point[k] >= lower[k] && point[k] <= upper[k])) return false;
  }
  return true;
}

void Box::project(std::span<double> point) const {
  for (std::size_t k = 0; k < point.size(); ++k) point[k] = std::clamp(point[k], lower[k], upper[k]);
}

Problem::Problem(int bodies, double mass, double sigma_x, double sigma_y)
    : bodies_(bodies), mass_(mass), sigma_x_(sigma_x), sigma_y_(sigma_y) {
  if (bodies < 2) throw ConfigError("number of bodies must be >= 2, got " + std::to_string(bodies));
  if (!(mass > 0.0) || !std::isfinite(mass)) throw ConfigError("mass must be positive and finite");
  if (!(sigma_x > 0.0) || !std::isfinite(sigma_x)) throw ConfigError("sigma_x must be positive and finite");
  if (!(sigma_y > 0.0) || !std::isfinite(sigma_y)) throw ConfigError("sigma_y must be positive and finite");

  const double bx = 1.0 / std::sqrt(mass * sigma_x);
  const double by = 1.0 / std::sqrt(mass * sigma_y);
  box_.lower.resize(dim());
  box_.upper.resize(dim());
  for (int i = 0; i < bodies; ++i) {
    box_.lower[2 * i] = -bx;
    box_.upper[2 * i] = bx;
    box_.lower[2 * i + 1] = -by;
    box_.upper[2 * i + 1] = by;
  }
}

Configuration::Configuration(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() % 2 != 0) throw ConfigError("configuration needs an even number of coordinates");
}

Configuration rotated(const Configuration& q, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  std::vector<double> out(q.size());
  for (int i = 0; i < q.bodies(); ++i) {
    out[2 * i] = c * q.x(i) - s * q.y(i);
    out[2 * i + 1] = s * q.x(i) + c * q.y(i);
  }
  return Configuration(std::move(out));
}

Configuration conjugated_x(const Configuration& q) {
  Configuration out = q;
  for (int i = 0; i < q.bodies(); ++i) out[2 * i + 1] = -q.y(i);
  return out;
}

Configuration conjugated_y(const Configuration& q) {
  Configuration out = q;
  for (int i = 0; i < q.bodies(); ++i) out[2 * i] = -q.x(i);
  return out;
}

Configuration permuted(const Configuration& q, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != q.bodies()) throw ConfigError("permutation length mismatch");
  std::vector<double> out(q.size());
  for (int i = 0; i < q.bodies(); ++i) {
    out[2 * i] = q.x(perm[i]);
    out[2 * i + 1] = q.y(perm[i]);
  }
  return Configuration(std::move(out));
}

}  // namespace ccbc
