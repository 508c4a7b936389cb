#include "ccbc/local_search.hpp"

#include <algorithm>
#include <cmath>

#include "ccbc/detail/system.hpp"
#include "ccbc/error.hpp"

namespace ccbc {

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::converged_root: return "converged_root";
    case SearchStatus::converged_stationary: return "converged_stationary";
    case SearchStatus::iteration_cap: return "iteration_cap";
    case SearchStatus::failure: return "failure";
  }
  return "unknown";
}

namespace {

double half_norm2(std::span<const double> f) {
  double s = 0.0;
  for (double v : f) s += v * v;
  return 0.5 * s;
}

struct Eval {
  std::vector<double> f;
  std::vector<double> jac;  // row-major dim x dim
  double F = 0.0;
};

// False on collision or non-finite output.
bool evaluate(const Problem& p, std::span<const double> q, Eval& e, bool with_jac) {
  try {
    detail::evaluate_system<double>(p, q, e.f, with_jac ? &e.jac : nullptr);
  } catch (const CollisionError&) {
    return false;
  }
  e.F = half_norm2(e.f);
  return std::isfinite(e.F);
}

// A = J^T J, g = J^T f.
void normal_equations(std::size_t n, const std::vector<double>& jac, const std::vector<double>& f, Matrix& a,
                      std::vector<double>& g) {
  a = Matrix(n, n);
  g.assign(n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const double* row = jac.data() + r * n;
    for (std::size_t i = 0; i < n; ++i) {
      g[i] += row[i] * f[r];
      if (row[i] == 0.0) continue;
      for (std::size_t j = i; j < n; ++j) a(i, j) += row[i] * row[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);
}

double projected_gradient_norm(const Box& box, std::span<const double> q, std::span<const double> g) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    double gi = g[i];
    if (q[i] <= box.lower[i] && gi > 0.0) gi = 0.0;
    if (q[i] >= box.upper[i] && gi < 0.0) gi = 0.0;
    s += gi * gi;
  }
  return std::sqrt(s);
}

}  // namespace

double objective(const Problem& p, std::span<const double> q) {
  std::vector<double> f;
  detail::evaluate_system<double>(p, q, f, nullptr);
  return half_norm2(f);
}

std::vector<double> damped_step(const Matrix& jac, std::span<const double> f, double mu) {
  const std::size_t n = jac.cols();
  std::vector<double> j(jac.data().begin(), jac.data().end());
  std::vector<double> fv(f.begin(), f.end());
  Matrix a;
  std::vector<double> g;
  normal_equations(n, j, fv, a, g);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) += mu;
    g[i] = -g[i];
  }
  return solve(a, g);
}

SearchResult minimize(const Problem& p, std::span<const double> start, const SearchOptions& opts) {
  const std::size_t n = p.dim();
  const Box& box = p.box();
  SearchResult res;
  std::vector<double> q(start.begin(), start.end());
  if (q.size() != n) throw ConfigError("start point size does not match the problem");
  box.project(q);
  res.point = Configuration(q);

  Eval cur;
  if (!evaluate(p, q, cur, true)) {
    res.objective = std::numeric_limits<double>::infinity();
    return res;
  }
  res.objective = cur.F;

  Matrix a;
  std::vector<double> g;
  normal_equations(n, cur.jac, cur.f, a, g);
  auto scale_of = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s = std::max(s, a(i, i));
    return s > 0.0 ? s : 1.0;
  };
  double scale = scale_of();
  double mu = opts.damping_init * scale;
  double nu = 2.0;

  Eval trial;
  std::vector<double> rhs(n);
  std::vector<double> qn(n);
  std::vector<double> h(n);
  int it = 0;
  for (;; ++it) {
    if (cur.F < opts.root_tol) {
      res.status = SearchStatus::converged_root;
      break;
    }
    if (projected_gradient_norm(box, q, g) < opts.gradient_tol) {
      res.status = SearchStatus::converged_stationary;
      break;
    }
    if (it >= opts.max_iterations) {
      res.status = SearchStatus::iteration_cap;
      break;
    }

    Matrix damped = a;
    for (std::size_t i = 0; i < n; ++i) {
      damped(i, i) += mu;
      rhs[i] = -g[i];
    }
    bool accepted = false;
    try {
      const auto step = solve(damped, rhs);
      for (std::size_t i = 0; i < n; ++i) qn[i] = q[i] + step[i];
      box.project(qn);
      double hnorm = 0.0;
      double qnorm = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        h[i] = qn[i] - q[i];
        hnorm += h[i] * h[i];
        qnorm += q[i] * q[i];
      }
      if (std::sqrt(hnorm) <= 1e-15 * (std::sqrt(qnorm) + 1e-15) && mu >= opts.damping_max * scale) {
        res.status = SearchStatus::converged_stationary;
        break;
      }
      if (evaluate(p, qn, trial, true) && trial.F < cur.F) {
        // Predicted decrease of the Gauss-Newton model for the projected step.
        double pred = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          double ah = 0.0;
          for (std::size_t j = 0; j < n; ++j) ah += a(i, j) * h[j];
          pred -= h[i] * g[i] + 0.5 * h[i] * ah;
        }
        const double rho = pred > 0.0 ? (cur.F - trial.F) / pred : 1.0;
        std::swap(cur, trial);
        q = qn;
        normal_equations(n, cur.jac, cur.f, a, g);
        scale = scale_of();
        const double t = 2.0 * rho - 1.0;
        mu *= std::max(1.0 / 3.0, 1.0 - t * t * t);
        nu = 2.0;
        accepted = true;
      }
    } catch (const SingularMatrixError&) {
    }
    if (!accepted) {
      if (mu >= opts.damping_max * scale) {
        res.status = SearchStatus::converged_stationary;
        break;
      }
      mu *= nu;
      nu *= 2.0;
    }
    mu = std::clamp(mu, opts.damping_min * scale, opts.damping_max * scale);
  }

  res.point = Configuration(q);
  res.objective = cur.F;
  res.iterations = it;
  return res;
}

}  // namespace ccbc
