#pragma once

// Residual system shared by the floating-point solver, the interval
// enclosures and the dual-number second-derivative enclosures. One template,
// three scalar types: double, Interval, Dual<Interval>.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ccbc/detail/dual.hpp"
#include "ccbc/error.hpp"
#include "ccbc/interval.hpp"
#include "ccbc/problem.hpp"

namespace ccbc::detail {

inline constexpr double kCollisionDistance = 1e-12;

// Squared-distance guard ahead of the square root; only intervals need it.
inline void check_separation_sq(double, int, int) {}

inline void check_separation_sq(const Interval& r2, int i, int j) {
  if (!(r2.lo() >= kCollisionDistance * kCollisionDistance))
    throw InconclusiveError("distance interval between bodies " + std::to_string(i) + " and " +
                            std::to_string(j) + " reaches the collision set");
}

template <class T>
void check_separation_sq(const Dual<T>& r2, int i, int j) {
  check_separation_sq(r2.v, i, j);
}

inline void check_separation(double r, int i, int j) {
  if (!(r >= kCollisionDistance)) throw CollisionError(i, j);
}

inline void check_separation(const Interval& r, int i, int j) {
  if (!(r.lo() >= kCollisionDistance))
    throw InconclusiveError("distance interval between bodies " + std::to_string(i) + " and " +
                            std::to_string(j) + " reaches the collision set");
}

template <class T>
void check_separation(const Dual<T>& r, int i, int j) {
  check_separation(r.v, i, j);
}

/// Evaluates f (length 2n) and optionally its Jacobian (2n x 2n, row-major).
///
///   f_{2i}   = sum_j m (x_j - x_i) / R_ij^3 + U sigma_x x_i
///   f_{2i+1} = sum_j m (y_j - y_i) / R_ij^3 + U sigma_y y_i
///
/// dF/dq has the pair blocks m/R^3 (I - 3 u u^T), diagonal blocks minus their
/// row sum, U sigma on the diagonal and the rank-one term sigma q_i (grad U)^T.
template <class T>
void evaluate_system(const Problem& p, std::span<const T> q, std::vector<T>& f, std::vector<T>* jac) {
  using std::sqrt;
  const int n = p.bodies();
  const std::size_t dim = p.dim();
  const double m = p.mass();
  const double m2 = m * m;

  f.assign(dim, T(0.0));
  std::vector<T> grad_u;
  if (jac) {
    jac->assign(dim * dim, T(0.0));
    grad_u.assign(dim, T(0.0));
  }
  auto J = [&](std::size_t r, std::size_t c) -> T& { return (*jac)[r * dim + c]; };

  T u(0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const T dx = q[2 * j] - q[2 * i];
      const T dy = q[2 * j + 1] - q[2 * i + 1];
      const T r2 = sqr(dx) + sqr(dy);
      check_separation_sq(r2, i, j);
      const T r = sqrt(r2);
      check_separation(r, i, j);
      const T inv_r3 = T(1.0) / (r * r2);
      u += T(m2) / r;

      const T fx = m * (dx * inv_r3);
      const T fy = m * (dy * inv_r3);
      f[2 * i] += fx;
      f[2 * i + 1] += fy;
      f[2 * j] -= fx;
      f[2 * j + 1] -= fy;

      if (!jac) continue;
      grad_u[2 * i] += m * fx;
      grad_u[2 * i + 1] += m * fy;
      grad_u[2 * j] -= m * fx;
      grad_u[2 * j + 1] -= m * fy;

      const T inv_r5 = inv_r3 / r2;
      const T bxx = m * (inv_r3 - 3.0 * (sqr(dx) * inv_r5));
      const T bxy = m * (-3.0 * (dx * dy * inv_r5));
      const T byy = m * (inv_r3 - 3.0 * (sqr(dy) * inv_r5));
      const T block[2][2] = {{bxx, bxy}, {bxy, byy}};
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          J(2 * i + a, 2 * j + b) += block[a][b];
          J(2 * j + a, 2 * i + b) += block[a][b];
          J(2 * i + a, 2 * i + b) -= block[a][b];
          J(2 * j + a, 2 * j + b) -= block[a][b];
        }
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < 2; ++a) {
      const std::size_t row = 2 * i + a;
      const double sigma = p.sigma(a);
      f[row] += sigma * (u * q[row]);
      if (!jac) continue;
      J(row, row) += sigma * u;
      const T sq = sigma * q[row];
      for (std::size_t c = 0; c < dim; ++c) J(row, c) += sq * grad_u[c];
    }
  }
}

/// g = J_f^T f, where f may be extended by the pinned-body row y_{i0}.
template <class T>
std::vector<T> gradient_g(const Problem& p, std::span<const T> q, std::optional<int> pinned_body) {
  const std::size_t dim = p.dim();
  std::vector<T> f;
  std::vector<T> jac;
  evaluate_system<T>(p, q, f, &jac);
  std::vector<T> g(dim, T(0.0));
  for (std::size_t c = 0; c < dim; ++c) {
    T s(0.0);
    for (std::size_t r = 0; r < dim; ++r) s += jac[r * dim + c] * f[r];
    g[c] = s;
  }
  if (pinned_body) {
    const std::size_t k = 2 * static_cast<std::size_t>(*pinned_body) + 1;
    g[k] += q[k];
  }
  return g;
}

}  // namespace ccbc::detail
