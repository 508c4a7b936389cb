#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ccbc/numerics.hpp"
#include "ccbc/problem.hpp"

namespace ccbc {

/// Closed interval [lo, hi] with outward rounding.
///
/// Every arithmetic result is computed in round-to-nearest and then widened by
/// one ulp on each side, which encloses the exact result without touching the
/// floating-point environment (so intervals are safe to use from any thread).
class Interval {
 public:
  constexpr Interval() = default;
  // Implicit: a double is the degenerate interval [v, v].
  constexpr Interval(double v) : lo_(v), hi_(v) {}  // NOLINT(google-explicit-constructor)
  Interval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double mid() const noexcept { return 0.5 * lo_ + 0.5 * hi_; }
  double rad() const noexcept { return 0.5 * (hi_ - lo_); }
  double width() const noexcept { return hi_ - lo_; }

  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const noexcept { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  /// `o` lies in the open interior of this interval.
  bool interior_contains(const Interval& o) const noexcept { return lo_ < o.lo_ && o.hi_ < hi_; }

  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);
  Interval& operator/=(const Interval& o);

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// Throws DomainError when b contains zero.
Interval operator/(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);

/// Throws DomainError when a.lo() < 0.
Interval sqrt(const Interval& a);
Interval sqr(const Interval& a);
/// Integer power, k >= 0.
Interval pow(const Interval& a, int k);
Interval hull(const Interval& a, const Interval& b);

inline double midpoint(const Interval& a) { return a.mid(); }

using IntervalVector = std::vector<Interval>;

class IntervalMatrix {
 public:
  IntervalMatrix() = default;
  IntervalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Interval& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Interval& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Componentwise midpoints m(A).
  Matrix midpoint() const;
  /// A - m(A), the remainder part of the midpoint decomposition.
  IntervalMatrix remainder() const;
  /// Largest entry width.
  double max_width() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Interval> data_;
};

/// Point matrix times interval matrix, and times interval vector.
IntervalMatrix operator*(const Matrix& a, const IntervalMatrix& b);
IntervalVector operator*(const Matrix& a, std::span<const Interval> x);
IntervalVector operator*(const IntervalMatrix& a, std::span<const Interval> x);

/// Box [center - radius, center + radius], widened outward.
IntervalVector make_box(std::span<const double> center, double radius);

/// Enclosure of the residual system over `box` (length 2n).
/// Throws InconclusiveError if some distance interval reaches zero.
IntervalVector iv_residuals(const Problem& p, std::span<const Interval> box);

/// Enclosure of g = J_f^T f over `box`. With `pinned_body`, f is extended by
/// the constraint row f_{2n+1} = y_{pinned_body}.
IntervalVector iv_gradient_g(const Problem& p, std::span<const Interval> box,
                             std::optional<int> pinned_body = std::nullopt);

/// Enclosure of the exact Jacobian of g over `box` (second derivatives of f
/// included, no Gauss-Newton truncation).
IntervalMatrix iv_jacobian_g(const Problem& p, std::span<const Interval> box,
                             std::optional<int> pinned_body = std::nullopt);

/// Central mode pins the body of largest radius at the box midpoint (lowest
/// index on ties); balanced mode pins nothing.
IntervalMatrix iv_jacobian_g(const Problem& p, std::span<const Interval> box, Mode mode);

}  // namespace ccbc
