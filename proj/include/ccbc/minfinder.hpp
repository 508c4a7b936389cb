#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "ccbc/kernels.hpp"
#include "ccbc/local_search.hpp"
#include "ccbc/problem.hpp"
#include "ccbc/sampler.hpp"

namespace ccbc {

enum class StopRule { stagnation, double_box };

std::string_view to_string(StopRule r);
/// Accepts "stagnation", "double-box" and "double_box". Throws ConfigError.
StopRule parse_stop_rule(std::string_view name);

struct RunConfig {
  std::size_t ns0 = 1000;
  std::size_t subsets = 1000;  ///< K
  std::size_t k_star = 100;
  double eps_db = 1e-6;
  StopRule stop_rule = StopRule::stagnation;
  SamplerKind sampler{};
  double root_tol = 1e-20;
  double degen_tol = 1e-15;
  double match_tol = 1e-6;
  /// Test C1 against every distinct solution found so far instead of the
  /// current subset's minima.
  bool c1_global = false;
  /// Start points searched concurrently; control parameters are frozen within
  /// a wave. 1 reproduces the strictly sequential loop.
  std::size_t wave = 16;
  Exec exec = Exec::parallel;
  SearchOptions search{};

  /// Throws ConfigError.
  void validate() const;
};

/// Sorted mutual distances.
std::vector<double> signature(const Configuration& q);
std::vector<double> signature(const Problem& p, const Configuration& q);

/// |R - R'| <= tol (1 + max(|R|, |R'|)) entrywise. Throws invalid_argument on
/// a length mismatch.
bool is_equivalent(std::span<const double> a, std::span<const double> b, double tol = 1e-6);

/// Lexicographic order on signatures.
bool signature_less(std::span<const double> a, std::span<const double> b);

struct Solution {
  Configuration point;
  double objective = 0.0;
  std::vector<double> signature;
  std::vector<double> eigenvalues;  ///< Hessian spectrum, |lambda| ascending
};

/// Registry of pairwise non-equivalent solutions.
class SolutionSet {
 public:
  explicit SolutionSet(double match_tol = 1e-6) : tol_(match_tol) {}

  double match_tol() const noexcept { return tol_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<Solution>& entries() const noexcept { return entries_; }
  const Solution& operator[](std::size_t i) const { return entries_[i]; }

  /// Index of an equivalent entry, or size() if none.
  std::size_t find(std::span<const double> sig) const;
  /// Inserts unless an equivalent entry exists; returns whether it did.
  bool insert(Solution s);
  /// Entries reordered by ascending signature.
  void sort();

 private:
  double tol_;
  std::vector<Solution> entries_;
};

/// Smallest pairwise distance, infinity for fewer than two points.
double min_pairwise_distance(std::span<const Configuration> pts);

struct StartControls {
  std::size_t local_searches = 0;  ///< L
  double distance_sum = 0.0;       ///< R_t
  /// d_min of the located minima; infinity disables C1.
  double d_min = std::numeric_limits<double>::infinity();
};

/// False iff C1 (s within d_min of a located minimum) or C2 (nearest earlier
/// sample within r_t = R_t / L) triggers. C2 is skipped while L = 0.
bool is_start_point(std::span<const double> s, double nearest_prior, std::span<const Configuration> minima,
                    const StartControls& c);

/// Same test computing d_min from `minima` and the nearest distance from
/// `prior_samples`.
bool is_start_point(std::span<const double> s, std::span<const Configuration> minima, const PointSet& prior_samples,
                    std::size_t local_searches, double distance_sum);

struct RunStats {
  std::size_t k0 = 0;             ///< subset where the final count first appeared
  std::size_t subsets_used = 0;   ///< subsets processed before stopping
  std::size_t samples = 0;
  std::size_t local_searches = 0;
  std::size_t roots = 0;
  std::size_t stationary = 0;
  std::size_t capped = 0;
  std::size_t failures = 0;
  double wall_time_s = 0.0;
  double typical_distance = 0.0;
  double db_mean = 0.0;
  double db_variance = 0.0;
  bool stopped_early = false;
  std::vector<std::size_t> nsol_history;
};

struct RunResult {
  SolutionSet solutions;
  std::vector<Solution> degenerate;
  RunStats stats;
};

/// Hessian spectrum and the non-degeneracy screen used by the registry.
std::vector<double> hessian_spectrum(const Problem& p, const Configuration& q);
bool is_degenerate(Mode mode, std::span<const double> eigenvalues, double degen_tol);

/// Called after every subset with the running statistics.
using ProgressFn = std::function<void(const RunStats&)>;

RunResult run(const Problem& p, const RunConfig& cfg, const ProgressFn& progress = {});

}  // namespace ccbc
