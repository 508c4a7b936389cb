#include "ccbc/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ccbc/detail/system.hpp"
#include "ccbc/error.hpp"
#include "ccbc/nbody.hpp"

namespace ccbc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

Interval outward(double lo, double hi) { return Interval(down(lo), up(hi)); }

}  // namespace

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(lo <= hi)) throw DomainError("interval with lo > hi or NaN bound");
}

Interval& Interval::operator+=(const Interval& o) { return *this = *this + o; }
Interval& Interval::operator-=(const Interval& o) { return *this = *this - o; }
Interval& Interval::operator*=(const Interval& o) { return *this = *this * o; }
Interval& Interval::operator/=(const Interval& o) { return *this = *this / o; }

Interval operator+(const Interval& a, const Interval& b) { return outward(a.lo() + b.lo(), a.hi() + b.hi()); }

Interval operator-(const Interval& a, const Interval& b) { return outward(a.lo() - b.hi(), a.hi() - b.lo()); }

Interval operator-(const Interval& a) { return Interval(-a.hi(), -a.lo()); }

Interval operator*(const Interval& a, const Interval& b) {
  const double p1 = a.lo() * b.lo();
  const double p2 = a.lo() * b.hi();
  const double p3 = a.hi() * b.lo();
  const double p4 = a.hi() * b.hi();
  return outward(std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4}));
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains(0.0)) throw DomainError("interval division by an interval containing zero");
  const double q1 = a.lo() / b.lo();
  const double q2 = a.lo() / b.hi();
  const double q3 = a.hi() / b.lo();
  const double q4 = a.hi() / b.hi();
  return outward(std::min({q1, q2, q3, q4}), std::max({q1, q2, q3, q4}));
}

Interval sqrt(const Interval& a) {
  if (a.lo() < 0.0) throw DomainError("interval sqrt of a negative lower bound");
  return Interval(std::max(0.0, down(std::sqrt(a.lo()))), up(std::sqrt(a.hi())));
}

Interval sqr(const Interval& a) {
  const double l = a.lo() * a.lo();
  const double h = a.hi() * a.hi();
  if (a.contains(0.0)) return Interval(0.0, up(std::max(l, h)));
  return Interval(std::max(0.0, down(std::min(l, h))), up(std::max(l, h)));
}

Interval pow(const Interval& a, int k) {
  if (k < 0) throw DomainError("interval pow needs a non-negative exponent");
  if (k == 0) return Interval(1.0);
  if (k % 2 == 0) return pow(sqr(a), k / 2);
  return a * pow(a, k - 1);
}

Interval hull(const Interval& a, const Interval& b) {
  return Interval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Matrix IntervalMatrix::midpoint() const {
  Matrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).mid();
  return m;
}

IntervalMatrix IntervalMatrix::remainder() const {
  IntervalMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Interval& e = (*this)(i, j);
      r(i, j) = e - Interval(e.mid());
    }
  return r;
}

double IntervalMatrix::max_width() const {
  double w = 0.0;
  for (const auto& e : data_) w = std::max(w, e.width());
  return w;
}

IntervalMatrix operator*(const Matrix& a, const IntervalMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("interval matrix product dimension mismatch");
  IntervalMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Interval s(0.0);
      for (std::size_t k = 0; k < a.cols(); ++k) s += Interval(a(i, k)) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

IntervalVector operator*(const Matrix& a, std::span<const Interval> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("interval matrix-vector dimension mismatch");
  IntervalVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Interval s(0.0);
    for (std::size_t k = 0; k < a.cols(); ++k) s += Interval(a(i, k)) * x[k];
    y[i] = s;
  }
  return y;
}

IntervalVector operator*(const IntervalMatrix& a, std::span<const Interval> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("interval matrix-vector dimension mismatch");
  IntervalVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Interval s(0.0);
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * x[k];
    y[i] = s;
  }
  return y;
}

IntervalVector make_box(std::span<const double> center, double radius) {
  IntervalVector box(center.size());
  for (std::size_t k = 0; k < center.size(); ++k)
    box[k] = radius == 0.0 ? Interval(center[k]) : outward(center[k] - radius, center[k] + radius);
  return box;
}

IntervalVector iv_residuals(const Problem& p, std::span<const Interval> box) {
  if (box.size() != p.dim()) throw ConfigError("interval box size does not match the problem");
  IntervalVector f;
  detail::evaluate_system<Interval>(p, box, f, nullptr);
  return f;
}

IntervalVector iv_gradient_g(const Problem& p, std::span<const Interval> box, std::optional<int> pinned_body) {
  if (box.size() != p.dim()) throw ConfigError("interval box size does not match the problem");
  return detail::gradient_g<Interval>(p, box, pinned_body);
}

IntervalMatrix iv_jacobian_g(const Problem& p, std::span<const Interval> box, std::optional<int> pinned_body) {
  using D = detail::Dual<Interval>;
  const std::size_t dim = p.dim();
  if (box.size() != dim) throw ConfigError("interval box size does not match the problem");
  std::vector<D> q(dim);
  for (std::size_t k = 0; k < dim; ++k) q[k] = D::variable(box[k], k, dim);

  const auto g = detail::gradient_g<D>(p, std::span<const D>(q), pinned_body);
  IntervalMatrix jg(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) jg(r, c) = c < g[r].d.size() ? g[r].d[c] : Interval(0.0);
  return jg;
}

IntervalMatrix iv_jacobian_g(const Problem& p, std::span<const Interval> box, Mode mode) {
  if (mode == Mode::balanced) return iv_jacobian_g(p, box, std::optional<int>{});
  std::vector<double> mid(box.size());
  for (std::size_t k = 0; k < box.size(); ++k) mid[k] = box[k].mid();
  const int pinned = max_radius_body(mid);
  return iv_jacobian_g(p, box, std::optional<int>{pinned});
}

}  // namespace ccbc
