#include "ccbc/nbody.hpp"

#include <algorithm>
#include <cmath>

#include "ccbc/detail/system.hpp"
#include "ccbc/error.hpp"

namespace ccbc {

namespace {

void check_size(const Problem& p, const Configuration& q) {
  if (q.size() != p.dim()) throw ConfigError("configuration size does not match the problem");
}

}  // namespace

double potential(const Problem& p, const Configuration& q) {
  check_size(p, q);
  const double m2 = p.mass() * p.mass();
  double u = 0.0;
  for (int i = 0; i < q.bodies(); ++i) {
    for (int j = i + 1; j < q.bodies(); ++j) {
      const double r = std::hypot(q.x(j) - q.x(i), q.y(j) - q.y(i));
      detail::check_separation(r, i, j);
      u += m2 / r;
    }
  }
  return u;
}

std::vector<double> gradient(const Problem& p, const Configuration& q) {
  check_size(p, q);
  const double m2 = p.mass() * p.mass();
  std::vector<double> g(q.size(), 0.0);
  for (int i = 0; i < q.bodies(); ++i) {
    for (int j = i + 1; j < q.bodies(); ++j) {
      const double dx = q.x(j) - q.x(i);
      const double dy = q.y(j) - q.y(i);
      const double r = std::hypot(dx, dy);
      detail::check_separation(r, i, j);
      const double w = m2 / (r * r * r);
      g[2 * i] += w * dx;
      g[2 * i + 1] += w * dy;
      g[2 * j] -= w * dx;
      g[2 * j + 1] -= w * dy;
    }
  }
  return g;
}

std::array<double, 2> center_of_mass(const Problem& p, const Configuration& q) {
  check_size(p, q);
  // Equal masses: the weights cancel.
  std::array<double, 2> c{0.0, 0.0};
  for (int i = 0; i < q.bodies(); ++i) {
    c[0] += q.x(i);
    c[1] += q.y(i);
  }
  c[0] /= q.bodies();
  c[1] /= q.bodies();
  return c;
}

double moment_of_inertia(const Problem& p, const Configuration& q) {
  const auto c = center_of_mass(p, q);
  double s = 0.0;
  for (int i = 0; i < q.bodies(); ++i) {
    const double dx = q.x(i) - c[0];
    const double dy = q.y(i) - c[1];
    s += p.sigma_x() * dx * dx + p.sigma_y() * dy * dy;
  }
  return p.mass() * s;
}

DerivedScalars derived_scalars(const Problem& p, const Configuration& q) {
  const double u = potential(p, q);
  const double inertia = moment_of_inertia(p, q);
  return {u, u / inertia, inertia, center_of_mass(p, q)};
}

Configuration normalize(const Problem& p, const Configuration& q) {
  potential(p, q);  // collision check
  const auto c = center_of_mass(p, q);
  const double inertia = moment_of_inertia(p, q);
  if (!(inertia > 0.0)) throw DomainError("cannot normalize: all bodies at the center of mass");
  const double scale = 1.0 / std::sqrt(inertia);
  std::vector<double> out(q.size());
  for (int i = 0; i < q.bodies(); ++i) {
    out[2 * i] = (q.x(i) - c[0]) * scale;
    out[2 * i + 1] = (q.y(i) - c[1]) * scale;
  }
  return Configuration(std::move(out));
}

std::vector<double> residuals(const Problem& p, const Configuration& q) {
  check_size(p, q);
  std::vector<double> f;
  detail::evaluate_system<double>(p, q.coords(), f, nullptr);
  return f;
}

Matrix residual_jacobian(const Problem& p, const Configuration& q) {
  check_size(p, q);
  std::vector<double> f;
  std::vector<double> jac;
  detail::evaluate_system<double>(p, q.coords(), f, &jac);
  Matrix out(p.dim(), p.dim());
  for (std::size_t r = 0; r < p.dim(); ++r)
    for (std::size_t c = 0; c < p.dim(); ++c) out(r, c) = jac[r * p.dim() + c];
  return out;
}

SymMatrix hessian(const Problem& p, const Configuration& q) {
  const double u = potential(p, q);
  const double m = p.mass();
  const double m2 = m * m;
  const int n = q.bodies();
  SymMatrix h(p.dim());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dx = q.x(i) - q.x(j);
      const double dy = q.y(i) - q.y(j);
      const double r = std::hypot(dx, dy);
      const double w = m2 / (r * r * r);
      const double ux = dx / r;
      const double uy = dy / r;
      const double d[2][2] = {{w * (1.0 - 3.0 * ux * ux), -3.0 * w * ux * uy},
                              {-3.0 * w * ux * uy, w * (1.0 - 3.0 * uy * uy)}};
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          h.add(2 * i + a, 2 * j + b, d[a][b]);
          // D_ii = -sum_{j != i} D_ij; add() mirrors, so only touch a <= b.
          if (a <= b) {
            h.add(2 * i + a, 2 * i + b, -d[a][b]);
            h.add(2 * j + a, 2 * j + b, -d[a][b]);
          }
        }
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    h.add(2 * i, 2 * i, u * p.sigma_x() * m);
    h.add(2 * i + 1, 2 * i + 1, u * p.sigma_y() * m);
  }
  return h;
}

int max_radius_body(std::span<const double> coords) {
  int best = 0;
  double best_r = -1.0;
  for (std::size_t i = 0; 2 * i + 1 < coords.size(); ++i) {
    const double r = std::hypot(coords[2 * i], coords[2 * i + 1]);
    if (r > best_r * (1.0 + 1e-12) + 1e-300) {
      best_r = r;
      best = static_cast<int>(i);
    }
  }
  return best;
}

std::vector<double> mutual_distances(const Configuration& q) {
  std::vector<double> r;
  r.reserve(static_cast<std::size_t>(q.bodies() * (q.bodies() - 1) / 2));
  for (int i = 0; i < q.bodies(); ++i)
    for (int j = i + 1; j < q.bodies(); ++j) r.push_back(std::hypot(q.x(j) - q.x(i), q.y(j) - q.y(i)));
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace ccbc
