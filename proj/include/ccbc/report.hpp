#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ccbc/minfinder.hpp"
#include "ccbc/problem.hpp"
#include "ccbc/rational.hpp"
#include "ccbc/verify.hpp"

namespace ccbc {

/// Everything written to one per-solution file.
struct SolutionReport {
  int bodies = 0;
  double mass = 1.0;
  double sigma_x = 1.0;
  double sigma_y = 1.0;
  Solution solution;
  VerificationReport verification;
  std::vector<Configuration> degenerate;       ///< run-wide degenerate list
  std::optional<Rational> morse_residual;      ///< central mode, whole set
};

/// key = value lines; doubles in %.17g so they parse back bit-exactly.
void write_solution_report(std::ostream& out, const SolutionReport& r);
/// Throws std::runtime_error on malformed input.
SolutionReport parse_solution_report(std::istream& in);

struct SummaryRow {
  int n = 0;
  double sigma_x = 1.0;
  double sigma_y = 1.0;
  std::size_t n_sol = 0;
  std::size_t ns0 = 0;
  std::size_t subsets = 0;
  std::size_t k_star = 0;
  std::size_t k0 = 0;
  double wall_time_s = 0.0;
  std::string sampler;
  std::uint64_t seed = 0;
};

inline constexpr const char* kSummaryHeader = "n,sigma_x,sigma_y,N_sol,Ns0,K,k_star,k0,wall_time_s,sampler,seed";

void write_summary_header(std::ostream& out);
void write_summary_row(std::ostream& out, const SummaryRow& row);

/// SVG of q in the scaled coordinates x sqrt(m sigma_x), y sqrt(m sigma_y).
void plot_configuration(std::ostream& out, const Problem& p, const Configuration& q, const std::string& title);

/// Formats a double with 17 significant digits.
std::string format_double(double v);

}  // namespace ccbc
