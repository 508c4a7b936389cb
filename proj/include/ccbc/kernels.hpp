#pragma once

// Data-parallel hot loops. Each kernel has a serial reference in
// ccbc::kernels::serial and an OpenMP version in ccbc::kernels::omp; both
// produce bitwise identical results.

#include <optional>
#include <span>
#include <vector>

#include "ccbc/local_search.hpp"
#include "ccbc/problem.hpp"
#include "ccbc/sampler.hpp"

namespace ccbc {

enum class Exec { serial, parallel };

namespace kernels {

/// Sample j's distance to the nearest of samples 0..j-1 (infinity for j = 0).
using NearestFn = std::vector<double> (*)(const PointSet&);

/// Local searches from points[idx[k]], k = 0..idx.size()-1.
using SearchFn = std::vector<SearchResult> (*)(const Problem&, const PointSet&, std::span<const std::size_t>,
                                               const SearchOptions&);

/// Relative quadratic-model errors [F(s) - 0.5 |J(q)(s - q)|^2] / F(s) for
/// every sample s, with f optionally extended by the row y_pinned.
using QuadraticFn = std::vector<double> (*)(const Problem&, std::span<const double>, std::optional<int>,
                                            const PointSet&);

namespace serial {
std::vector<double> nearest_prior_distances(const PointSet& pts);
std::vector<SearchResult> search_batch(const Problem& p, const PointSet& pts, std::span<const std::size_t> idx,
                                       const SearchOptions& opts);
std::vector<double> quadratic_errors(const Problem& p, std::span<const double> q, std::optional<int> pinned,
                                     const PointSet& samples);
}  // namespace serial

namespace omp {
std::vector<double> nearest_prior_distances(const PointSet& pts);
std::vector<SearchResult> search_batch(const Problem& p, const PointSet& pts, std::span<const std::size_t> idx,
                                       const SearchOptions& opts);
std::vector<double> quadratic_errors(const Problem& p, std::span<const double> q, std::optional<int> pinned,
                                     const PointSet& samples);
}  // namespace omp

inline NearestFn nearest_prior_distances(Exec e) {
  return e == Exec::serial ? &serial::nearest_prior_distances : &omp::nearest_prior_distances;
}
inline SearchFn search_batch(Exec e) { return e == Exec::serial ? &serial::search_batch : &omp::search_batch; }
inline QuadraticFn quadratic_errors(Exec e) {
  return e == Exec::serial ? &serial::quadratic_errors : &omp::quadratic_errors;
}

}  // namespace kernels

/// Caps the OpenMP worker pool; 0 leaves the runtime default.
void set_thread_limit(int threads);

}  // namespace ccbc
