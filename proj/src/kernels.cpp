#include "ccbc/kernels.hpp"

#include <cmath>
#include <limits>

#include <omp.h>

#include "ccbc/detail/system.hpp"
#include "ccbc/error.hpp"

namespace ccbc {

void set_thread_limit(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

namespace kernels {

namespace {

double nearest_prior(const PointSet& pts, std::size_t j) {
  const std::size_t dim = pts.dim();
  const double* sj = pts[j].data();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < j; ++i) {
    const double* si = pts[i].data();
    double s = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double t = sj[d] - si[d];
      s += t * t;
    }
    best = std::min(best, s);
  }
  return std::sqrt(best);
}

struct LinearModel {
  std::vector<double> jac;  // (rows x dim), rows = dim or dim + 1
  std::size_t rows = 0;
};

LinearModel linear_model(const Problem& p, std::span<const double> q, std::optional<int> pinned) {
  const std::size_t dim = p.dim();
  std::vector<double> f;
  LinearModel m;
  detail::evaluate_system<double>(p, q, f, &m.jac);
  m.rows = dim;
  if (pinned) {
    m.jac.resize((dim + 1) * dim, 0.0);
    m.jac[dim * dim + 2 * static_cast<std::size_t>(*pinned) + 1] = 1.0;
    m.rows = dim + 1;
  }
  return m;
}

// NaN signals a sample that must be redrawn (F = 0 or a collision).
double quadratic_error(const Problem& p, std::span<const double> q, std::optional<int> pinned, const LinearModel& m,
                       std::span<const double> s) {
  const std::size_t dim = p.dim();
  std::vector<double> f;
  try {
    detail::evaluate_system<double>(p, s, f, nullptr);
  } catch (const CollisionError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (pinned) f.push_back(s[2 * static_cast<std::size_t>(*pinned) + 1]);
  double F = 0.0;
  for (double v : f) F += v * v;
  F *= 0.5;
  if (!(F > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  double lin = 0.0;
  for (std::size_t r = 0; r < m.rows; ++r) {
    double t = 0.0;
    for (std::size_t c = 0; c < dim; ++c) t += m.jac[r * dim + c] * (s[c] - q[c]);
    lin += t * t;
  }
  return (F - 0.5 * lin) / F;
}

}  // namespace

namespace serial {

std::vector<double> nearest_prior_distances(const PointSet& pts) {
  std::vector<double> out(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) out[j] = nearest_prior(pts, j);
  return out;
}

std::vector<SearchResult> search_batch(const Problem& p, const PointSet& pts, std::span<const std::size_t> idx,
                                       const SearchOptions& opts) {
  std::vector<SearchResult> out(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) out[k] = minimize(p, pts[idx[k]], opts);
  return out;
}

std::vector<double> quadratic_errors(const Problem& p, std::span<const double> q, std::optional<int> pinned,
                                     const PointSet& samples) {
  const auto m = linear_model(p, q, pinned);
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) out[i] = quadratic_error(p, q, pinned, m, samples[i]);
  return out;
}

}  // namespace serial

namespace omp {

std::vector<double> nearest_prior_distances(const PointSet& pts) {
  const auto n = static_cast<std::ptrdiff_t>(pts.size());
  std::vector<double> out(pts.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t j = 0; j < n; ++j) out[j] = nearest_prior(pts, static_cast<std::size_t>(j));
  return out;
}

std::vector<SearchResult> search_batch(const Problem& p, const PointSet& pts, std::span<const std::size_t> idx,
                                       const SearchOptions& opts) {
  const auto n = static_cast<std::ptrdiff_t>(idx.size());
  std::vector<SearchResult> out(idx.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = minimize(p, pts[idx[k]], opts);
  return out;
}

std::vector<double> quadratic_errors(const Problem& p, std::span<const double> q, std::optional<int> pinned,
                                     const PointSet& samples) {
  const auto m = linear_model(p, q, pinned);
  const auto n = static_cast<std::ptrdiff_t>(samples.size());
  std::vector<double> out(samples.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = quadratic_error(p, q, pinned, m, samples[i]);
  return out;
}

}  // namespace omp

}  // namespace kernels
}  // namespace ccbc
