#include "ccbc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ccbc/error.hpp"
#include "ccbc/nbody.hpp"

namespace ccbc {

BasicChecks basic_checks(const Problem& p, const Configuration& q) {
  BasicChecks b;
  b.center = center_of_mass(p, q);
  b.com_norm = std::hypot(b.center[0], b.center[1]);
  b.inertia_residual = std::abs(moment_of_inertia(p, q) - 1.0);
  return b;
}

double albouy_chenciner_residual(const Problem& p, const Configuration& q) {
  const int n = q.bodies();
  const double m = p.mass();
  const double lambda = -potential(p, q) / (n * m);
  std::vector<double> r2(static_cast<std::size_t>(n * n), 0.0);
  std::vector<double> s(static_cast<std::size_t>(n * n), 0.0);
  auto at = [n](int i, int j) { return static_cast<std::size_t>(i * n + j); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d2 = (q.x(i) - q.x(j)) * (q.x(i) - q.x(j)) + (q.y(i) - q.y(j)) * (q.y(i) - q.y(j));
      r2[at(i, j)] = d2;
      s[at(i, j)] = 1.0 / (d2 * std::sqrt(d2)) + lambda;
    }
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double f = 0.0;
      for (int k = 0; k < n; ++k) {
        f += s[at(i, k)] * (r2[at(j, k)] - r2[at(i, k)] - r2[at(i, j)]);
        f += s[at(j, k)] * (r2[at(i, k)] - r2[at(j, k)] - r2[at(i, j)]);
      }
      f *= m;
      sum += f * f;
    }
  return std::sqrt(sum);
}

int morse_index(Mode mode, std::span<const double> eigenvalues, double degen_tol) {
  if (is_degenerate(mode, eigenvalues, degen_tol))
    throw DomainError("degenerate solution: |lambda_" + std::to_string(mode == Mode::central ? 2 : 1) +
                      "| below " + std::to_string(degen_tol));
  const std::size_t first = mode == Mode::central ? 1 : 0;
  int count = 0;
  for (std::size_t k = first; k < eigenvalues.size(); ++k)
    if (eigenvalues[k] < 0.0) ++count;
  return count;
}

int morse_index(const Problem& p, const Configuration& q, double degen_tol) {
  return morse_index(p.mode(), hessian_spectrum(p, q), degen_tol);
}

namespace {

constexpr double kCollinearTol = 1e-8;
constexpr double kAxisRadiusTol = 1e-8;
constexpr double kMatchTol = 1e-6;
constexpr double kAngleMergeTol = 1e-7;

// Distance between two line angles modulo pi.
double line_angle_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), std::numbers::pi);
  return std::min(d, std::numbers::pi - d);
}

bool reflection_matches(const std::vector<double>& xs, const std::vector<double>& ys, double alpha) {
  const std::size_t n = xs.size();
  const double c = std::cos(2.0 * alpha);
  const double s = std::sin(2.0 * alpha);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const double rx = c * xs[i] + s * ys[i];
    const double ry = s * xs[i] - c * ys[i];
    std::size_t pick = n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = std::max(std::abs(rx - xs[j]), std::abs(ry - ys[j]));
      if (d <= kMatchTol && d < best) {
        best = d;
        pick = j;
      }
    }
    if (pick == n) return false;
    used[pick] = true;
  }
  return true;
}

}  // namespace

Rational isotropy_index(const Problem& p, const Configuration& q) {
  const auto c = center_of_mass(p, q);
  const std::size_t n = static_cast<std::size_t>(q.bodies());
  std::vector<double> xs(n);
  std::vector<double> ys(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = q.x(static_cast<int>(i)) - c[0];
    ys[i] = q.y(static_cast<int>(i)) - c[1];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  // Spread across the principal axis is the smaller singular value.
  const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  double across = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = -std::sin(theta) * xs[i] + std::cos(theta) * ys[i];
    across += t * t;
  }
  if (std::sqrt(across) < kCollinearTol) return Rational(2);

  std::vector<double> rays;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::hypot(xs[i], ys[i]) < kAxisRadiusTol) continue;
    double a = std::atan2(ys[i], xs[i]);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    rays.push_back(a);
  }
  std::sort(rays.begin(), rays.end());
  std::vector<double> candidates = rays;
  for (std::size_t i = 0; i + 1 < rays.size(); ++i) candidates.push_back(0.5 * (rays[i] + rays[i + 1]));
  if (rays.size() >= 2) candidates.push_back(0.5 * (rays.back() + rays.front() + 2.0 * std::numbers::pi));
  for (auto& a : candidates) a = std::fmod(a, std::numbers::pi);

  std::vector<double> lines;
  for (double a : candidates) {
    const bool seen = std::any_of(lines.begin(), lines.end(),
                                  [&](double b) { return line_angle_gap(a, b) < kAngleMergeTol; });
    if (!seen && reflection_matches(xs, ys, a)) lines.push_back(a);
  }
  if (lines.empty()) return Rational(1, 2);
  return Rational(static_cast<std::int64_t>(lines.size()));
}

Rational morse_equality_residual(int bodies, std::span<const std::pair<int, Rational>> indices) {
  Rational sum(0);
  for (const auto& [h, i] : indices) {
    if (i.is_zero()) throw DomainError("isotropy index must be positive");
    sum = sum + Rational(h % 2 == 0 ? 1 : -1) / i;
  }
  const std::int64_t n = bodies;
  return sum - Rational(n % 2 == 0 ? 1 : -1, n * (n - 1));
}

Rational morse_equality_check(const Problem& p, const SolutionSet& set, double degen_tol) {
  if (p.mode() != Mode::central) throw DomainError("the Morse equality applies to central configurations only");
  std::vector<std::pair<int, Rational>> idx;
  for (const auto& s : set.entries()) {
    const auto ev = s.eigenvalues.empty() ? hessian_spectrum(p, s.point) : s.eigenvalues;
    idx.emplace_back(morse_index(p.mode(), ev, degen_tol), isotropy_index(p, s.point));
  }
  return morse_equality_residual(p.bodies(), idx);
}

bool krawczyk_contains(std::span<const double> q, std::span<const Interval> box, std::span<const Interval> g_at_q,
                       const IntervalMatrix& jg_box) {
  const std::size_t n = q.size();
  const Matrix c = invert(jg_box.midpoint());
  const IntervalMatrix cj = c * jg_box;
  const IntervalVector cg = c * g_at_q;
  IntervalVector d(n);
  for (std::size_t k = 0; k < n; ++k) d[k] = box[k] - Interval(q[k]);
  for (std::size_t i = 0; i < n; ++i) {
    Interval k = Interval(q[i]) - cg[i];
    for (std::size_t j = 0; j < n; ++j) {
      const Interval m = Interval(i == j ? 1.0 : 0.0) - cj(i, j);
      k += m * d[j];
    }
    if (!box[i].interior_contains(k)) return false;
  }
  return true;
}

std::pair<Configuration, std::optional<int>> pin_rotation(const Problem& p, const Configuration& q) {
  if (p.mode() == Mode::balanced) return {q, std::nullopt};
  const int i0 = max_radius_body(q.coords());
  Configuration r = rotated(q, -std::atan2(q.y(i0), q.x(i0)));
  r[2 * static_cast<std::size_t>(i0) + 1] = 0.0;
  return {std::move(r), i0};
}

KrawczykResult krawczyk_certificate(const Problem& p, const Configuration& q, double r) {
  KrawczykResult out;
  const auto [qr, pinned] = pin_rotation(p, q);
  const auto box = make_box(qr.coords(), r);
  try {
    const auto f = iv_residuals(p, box);
    out.zero_in_f = std::all_of(f.begin(), f.end(), [](const Interval& v) { return v.contains(0.0); });
    const auto point = make_box(qr.coords(), 0.0);
    const auto g = iv_gradient_g(p, point, pinned);
    const auto jg = iv_jacobian_g(p, box, pinned);
    out.unique = krawczyk_contains(qr.coords(), box, g, jg);
  } catch (const InconclusiveError& e) {
    out.inconclusive = true;
    out.note = e.what();
  } catch (const SingularMatrixError& e) {
    out.inconclusive = true;
    out.note = e.what();
  } catch (const DomainError& e) {
    out.inconclusive = true;
    out.note = e.what();
  }
  return out;
}

namespace {

QuadraticTest summarize(const std::vector<double>& eps) {
  QuadraticTest t;
  t.samples = eps.size();
  double s = 0.0;
  for (double e : eps) {
    s += e * e;
    t.max_err = std::max(t.max_err, std::abs(e));
  }
  t.rms = eps.empty() ? 0.0 : std::sqrt(s / static_cast<double>(eps.size()));
  return t;
}

void draw_box(std::mt19937_64& rng, std::span<const double> q, double radius, std::span<double> out) {
  for (std::size_t d = 0; d < q.size(); ++d) out[d] = q[d] + radius * (2.0 * unit_double(rng()) - 1.0);
}

}  // namespace

QuadraticTest quadratic_rms_test(const Problem& p, const Configuration& q, double r_rel, std::size_t samples,
                                 std::uint64_t seed, Exec exec) {
  const auto [qr, pinned] = pin_rotation(p, q);
  double norm = 0.0;
  for (double v : qr.coords()) norm += v * v;
  const double radius = r_rel * std::sqrt(norm);
  const auto errors_fn = kernels::quadratic_errors(exec);
  std::mt19937_64 rng(seed);
  std::vector<double> eps;
  eps.reserve(samples);
  for (int attempt = 0; eps.size() < samples; ++attempt) {
    if (attempt > 100) throw DomainError("quadratic test could not draw valid samples");
    const std::size_t need = samples - eps.size();
    PointSet batch(p.dim(), need);
    for (std::size_t i = 0; i < need; ++i) draw_box(rng, qr.coords(), radius, batch[i]);
    for (double e : errors_fn(p, qr.coords(), pinned, batch))
      if (std::isfinite(e)) eps.push_back(e);
  }
  return summarize(eps);
}

QuadraticTest quadratic_rms_test(const std::function<std::vector<double>(std::span<const double>)>& f,
                                 const Matrix& jac, std::span<const double> q, double radius, std::size_t samples,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> eps;
  std::vector<double> s(q.size());
  std::vector<double> delta(q.size());
  for (std::size_t drawn = 0; eps.size() < samples; ++drawn) {
    if (drawn > 100 * samples + 100) throw DomainError("quadratic test could not draw valid samples");
    draw_box(rng, q, radius, s);
    const auto fs = f(s);
    double F = 0.0;
    for (double v : fs) F += v * v;
    F *= 0.5;
    if (!(F > 0.0)) continue;
    for (std::size_t d = 0; d < q.size(); ++d) delta[d] = s[d] - q[d];
    const auto lin = jac * std::span<const double>(delta);
    double L = 0.0;
    for (double v : lin) L += v * v;
    eps.push_back((F - 0.5 * L) / F);
  }
  return summarize(eps);
}

std::string_view to_string(VerifyLevel v) {
  switch (v) {
    case VerifyLevel::none: return "none";
    case VerifyLevel::fast: return "fast";
    case VerifyLevel::full: return "full";
  }
  return "unknown";
}

VerifyLevel parse_verify_level(std::string_view name) {
  for (auto v : {VerifyLevel::none, VerifyLevel::fast, VerifyLevel::full})
    if (name == to_string(v)) return v;
  throw ConfigError("unknown verify level '" + std::string(name) + "'");
}

VerificationReport verify_solution(const Problem& p, const Solution& sol, const VerifyOptions& opts) {
  VerificationReport rep;
  rep.basic = basic_checks(p, sol.point);
  if (opts.level == VerifyLevel::none) return rep;

  if (p.mode() == Mode::central) rep.ac_residual = albouy_chenciner_residual(p, sol.point);
  const auto ev = sol.eigenvalues.empty() ? hessian_spectrum(p, sol.point) : sol.eigenvalues;
  if (!is_degenerate(p.mode(), ev, opts.degen_tol)) rep.morse_index = morse_index(p.mode(), ev, opts.degen_tol);
  rep.isotropy_index = isotropy_index(p, sol.point);
  if (opts.level == VerifyLevel::fast) return rep;

  rep.krawczyk = krawczyk_certificate(p, sol.point, opts.krawczyk_radius);
  rep.quadratic = quadratic_rms_test(p, sol.point, opts.quadratic_radius, opts.quadratic_samples, opts.seed, opts.exec);
  return rep;
}

}  // namespace ccbc
