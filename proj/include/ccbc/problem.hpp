#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ccbc {

/// Central mode when sigma_x == sigma_y (O(2)-symmetric), balanced otherwise.
enum class Mode { central, balanced };

/// Axis-aligned search box.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dim() const noexcept { return lower.size(); }
  bool contains(std::span<const double> point) const;
  /// Componentwise clamp of `point` into the box.
  void project(std::span<double> point) const;
};

/// Equal-mass planar problem with diagonal weight matrix S = diag(sigma_x, sigma_y).
class Problem {
 public:
  Problem(int bodies, double mass = 1.0, double sigma_x = 1.0, double sigma_y = 1.0);

  int bodies() const noexcept { return bodies_; }
  std::size_t dim() const noexcept { return 2 * static_cast<std::size_t>(bodies_); }
  double mass() const noexcept { return mass_; }
  double sigma_x() const noexcept { return sigma_x_; }
  double sigma_y() const noexcept { return sigma_y_; }
  /// sigma for coordinate axis 0 (x) or 1 (y).
  double sigma(int axis) const noexcept { return axis == 0 ? sigma_x_ : sigma_y_; }
  Mode mode() const noexcept { return sigma_x_ == sigma_y_ ? Mode::central : Mode::balanced; }

  /// [-1/sqrt(m sigma_x), 1/sqrt(m sigma_x)] for x, likewise for y. Every
  /// normalized configuration lies inside.
  const Box& box() const noexcept { return box_; }

 private:
  int bodies_;
  double mass_;
  double sigma_x_;
  double sigma_y_;
  Box box_;
};

/// Planar configuration stored interleaved as (x1, y1, ..., xn, yn).
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::vector<double> coords);

  int bodies() const noexcept { return static_cast<int>(coords_.size() / 2); }
  std::size_t size() const noexcept { return coords_.size(); }
  double x(int i) const { return coords_[2 * static_cast<std::size_t>(i)]; }
  double y(int i) const { return coords_[2 * static_cast<std::size_t>(i) + 1]; }

  std::span<const double> coords() const noexcept { return coords_; }
  std::span<double> coords() noexcept { return coords_; }
  const std::vector<double>& vector() const noexcept { return coords_; }

  double operator[](std::size_t k) const { return coords_[k]; }
  double& operator[](std::size_t k) { return coords_[k]; }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::vector<double> coords_;
};

/// Rotate every body by `angle` radians about the origin.
Configuration rotated(const Configuration& q, double angle);
/// Reflect across the x-axis (y -> -y).
Configuration conjugated_x(const Configuration& q);
/// Reflect across the y-axis (x -> -x).
Configuration conjugated_y(const Configuration& q);
/// Body order permuted: body i of the result is body perm[i] of q.
Configuration permuted(const Configuration& q, std::span<const int> perm);

}  // namespace ccbc
