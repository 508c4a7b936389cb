#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace ccbc::detail {

inline double sqr(double x) { return x * x; }

/// Forward-mode dual number with a dense gradient over a base scalar T
/// (double or Interval). An empty gradient means "constant".
template <class T>
struct Dual {
  T v{};
  std::vector<T> d;

  Dual() = default;
  Dual(double c) : v(c) {}  // NOLINT(google-explicit-constructor)
  Dual(T value, std::vector<T> grad) : v(std::move(value)), d(std::move(grad)) {}

  /// Independent variable `index` of `count`.
  static Dual variable(T value, std::size_t index, std::size_t count) {
    std::vector<T> g(count, T(0.0));
    g[index] = T(1.0);
    return Dual(std::move(value), std::move(g));
  }
};

namespace dual_ops {

template <class T, class F>
std::vector<T> combine(const std::vector<T>& a, const std::vector<T>& b, F f) {
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<T> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const T x = k < a.size() ? a[k] : T(0.0);
    const T y = k < b.size() ? b[k] : T(0.0);
    out[k] = f(x, y);
  }
  return out;
}

template <class T, class F>
std::vector<T> map(const std::vector<T>& a, F f) {
  std::vector<T> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = f(a[k]);
  return out;
}

}  // namespace dual_ops

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
  return {a.v + b.v, dual_ops::combine(a.d, b.d, [](const T& x, const T& y) { return x + y; })};
}

template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
  return {a.v - b.v, dual_ops::combine(a.d, b.d, [](const T& x, const T& y) { return x - y; })};
}

template <class T>
Dual<T> operator-(const Dual<T>& a) {
  return {-a.v, dual_ops::map(a.d, [](const T& x) { return -x; })};
}

template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  return {a.v * b.v,
          dual_ops::combine(a.d, b.d, [&](const T& x, const T& y) { return x * b.v + a.v * y; })};
}

template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  const T q = a.v / b.v;
  return {q, dual_ops::combine(a.d, b.d, [&](const T& x, const T& y) { return (x - q * y) / b.v; })};
}

template <class T>
Dual<T>& operator+=(Dual<T>& a, const Dual<T>& b) {
  return a = a + b;
}

template <class T>
Dual<T>& operator-=(Dual<T>& a, const Dual<T>& b) {
  return a = a - b;
}

template <class T>
Dual<T> operator*(double c, const Dual<T>& a) {
  return {T(c) * a.v, dual_ops::map(a.d, [&](const T& x) { return T(c) * x; })};
}

template <class T>
Dual<T> operator*(const Dual<T>& a, double c) {
  return c * a;
}

template <class T>
Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  const T s = sqrt(a.v);
  const T half_inv = T(0.5) / s;
  return {s, dual_ops::map(a.d, [&](const T& x) { return x * half_inv; })};
}

template <class T>
Dual<T> sqr(const Dual<T>& a) {
  return {sqr(a.v), dual_ops::map(a.d, [&](const T& x) { return T(2.0) * a.v * x; })};
}

template <class T>
const T& value_of(const Dual<T>& a) {
  return a.v;
}

}  // namespace ccbc::detail
