#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccbc/interval.hpp"
#include "ccbc/kernels.hpp"
#include "ccbc/minfinder.hpp"
#include "ccbc/problem.hpp"
#include "ccbc/rational.hpp"

namespace ccbc {

struct BasicChecks {
  std::array<double, 2> center{};
  double com_norm = 0.0;
  double inertia_residual = 0.0;  ///< |I_S - 1|
};

BasicChecks basic_checks(const Problem& p, const Configuration& q);

/// Root-sum-square of the Albouy-Chenciner residuals f_ij, i < j.
double albouy_chenciner_residual(const Problem& p, const Configuration& q);

/// Negative eigenvalues of the |lambda|-sorted Hessian spectrum, skipping the
/// rotational zero mode (position 1) in central mode. Throws DomainError for
/// a spectrum that fails the degeneracy screen.
int morse_index(Mode mode, std::span<const double> eigenvalues, double degen_tol = 1e-15);
int morse_index(const Problem& p, const Configuration& q, double degen_tol = 1e-15);

/// 2 for collinear configurations, otherwise the number of reflection lines
/// (angles in [0, 180)) mapping the bodies onto themselves, or 1/2 if none.
Rational isotropy_index(const Problem& p, const Configuration& q);

/// Exact sum_i (-1)^h_i / i_i - (-1)^n / (n (n - 1)).
Rational morse_equality_residual(int bodies, std::span<const std::pair<int, Rational>> indices);
/// Same, computing both indices for every entry of a central-mode set.
Rational morse_equality_check(const Problem& p, const SolutionSet& set, double degen_tol = 1e-15);

struct KrawczykResult {
  bool zero_in_f = false;
  bool unique = false;
  bool inconclusive = false;
  std::string note;
};

/// K = q - C g(q) + (I - C J_g(box)) (box - q) strictly inside `box`, with
/// C = mid(J_g(box))^-1. Throws SingularMatrixError if mid(J_g) is singular.
bool krawczyk_contains(std::span<const double> q, std::span<const Interval> box, std::span<const Interval> g_at_q,
                       const IntervalMatrix& jg_box);

/// Central mode rotates q so the body of largest radius (lowest index on
/// ties) lies on the positive x-axis, pins its y coordinate with an extra
/// residual row, then runs both certificate steps on the box of radius r.
KrawczykResult krawczyk_certificate(const Problem& p, const Configuration& q, double r = 1e-8);

/// Rotation used by the certificate; returns the pinned body. Balanced mode
/// leaves q untouched.
std::pair<Configuration, std::optional<int>> pin_rotation(const Problem& p, const Configuration& q);

struct QuadraticTest {
  double rms = 0.0;
  double max_err = 0.0;
  std::size_t samples = 0;
};

/// Relative quadratic-model errors at N_q uniform points of the box
/// q +- r_rel |q| (central mode pins the rotation as for the certificate).
QuadraticTest quadratic_rms_test(const Problem& p, const Configuration& q, double r_rel = 1e-3,
                                 std::size_t samples = 10000, std::uint64_t seed = 0, Exec exec = Exec::parallel);

/// Generic form for an arbitrary residual map f with Jacobian `jac` at q.
QuadraticTest quadratic_rms_test(const std::function<std::vector<double>(std::span<const double>)>& f,
                                 const Matrix& jac, std::span<const double> q, double radius, std::size_t samples,
                                 std::uint64_t seed = 0);

enum class VerifyLevel { none, fast, full };

std::string_view to_string(VerifyLevel v);
VerifyLevel parse_verify_level(std::string_view name);

struct VerificationReport {
  BasicChecks basic;
  std::optional<double> ac_residual;  ///< central mode only
  std::optional<int> morse_index;
  std::optional<Rational> isotropy_index;
  std::optional<KrawczykResult> krawczyk;
  std::optional<QuadraticTest> quadratic;
};

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::full;
  double degen_tol = 1e-15;
  double krawczyk_radius = 1e-8;
  double quadratic_radius = 1e-3;
  std::size_t quadratic_samples = 10000;
  std::uint64_t seed = 0;
  Exec exec = Exec::parallel;
};

/// none: basic checks only; fast: adds the indices and the AC residual; full:
/// adds the certificate and the quadratic test.
VerificationReport verify_solution(const Problem& p, const Solution& sol, const VerifyOptions& opts = {});

}  // namespace ccbc
