#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "ccbc/numerics.hpp"
#include "ccbc/problem.hpp"

namespace ccbc {

enum class SearchStatus { converged_root, converged_stationary, iteration_cap, failure };

std::string_view to_string(SearchStatus s);

struct SearchOptions {
  int max_iterations = 200;
  double root_tol = 1e-20;      ///< F below this is a root
  double gradient_tol = 1e-12;  ///< projected gradient norm for stationarity
  double damping_min = 1e-12;   ///< relative to max diag(J^T J)
  double damping_max = 1e8;
  double damping_init = 1e-6;
};

struct SearchResult {
  Configuration point;
  double objective = 0.0;
  int iterations = 0;
  SearchStatus status = SearchStatus::failure;
};

/// F(q) = 0.5 |f(q)|^2. Throws CollisionError.
double objective(const Problem& p, std::span<const double> q);

/// Projected Levenberg-Marquardt on F over the problem box. Never throws for
/// bad start points; they yield status failure.
SearchResult minimize(const Problem& p, std::span<const double> start, const SearchOptions& opts = {});

/// Solves (J^T J + mu I) h = -J^T f. mu = 0 is the plain Gauss-Newton step.
std::vector<double> damped_step(const Matrix& jac, std::span<const double> f, double mu);

}  // namespace ccbc
