// Acceptance checks. Each criterion prints exactly one line
//   criterion N: PASS|FAIL  <details>
// and the process exits 0 on PASS, 1 on FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ccbc/local_search.hpp"
#include "ccbc/minfinder.hpp"
#include "ccbc/nbody.hpp"
#include "ccbc/sampler.hpp"
#include "ccbc/verify.hpp"
#include "fixtures.hpp"
#include "interval_fuzz.hpp"

using namespace ccbc;

namespace {

// Tolerances and budgets, fixed here so every run is comparable.
constexpr double kRootTol = 1e-20;
constexpr double kComTol = 1e-10;
constexpr double kInertiaTol = 1e-10;
constexpr double kAcTol = 1e-8;
constexpr double kOracleTol = 1e-10;
constexpr double kKrawczykRadius = 1e-8;
constexpr double kRmsBound = 2e-4;
constexpr double kRmsRadius = 1e-3;
constexpr std::size_t kRmsSamples = 10000;
constexpr double kFdTol = 1e-6;
constexpr int kFuzzCases = 100000;
constexpr double kDoubleBoxTol = 0.02;
constexpr int kDoubleBoxIterations = 200;
constexpr double kSmallRunLimitS = 300.0;
constexpr double kEightRunLimitS = 600.0;
constexpr int kSeeds = 3;

const std::map<int, std::size_t> kCentralCounts{{3, 2}, {4, 4}, {5, 5}, {6, 9}, {7, 14}, {8, 20}};
const std::vector<std::pair<double, std::size_t>> kBalancedCounts{{0.1, 10}, {0.5, 12}, {0.8, 10}};

struct Line {
  bool pass = true;
  std::ostringstream msg;
  void fail() { pass = false; }
};

RunConfig defaults(std::uint64_t seed, std::size_t kstar) {
  RunConfig c;
  c.ns0 = 1000;
  c.subsets = 1000;
  c.k_star = kstar;
  c.sampler = {SamplerTag::faure, seed};
  return c;
}

struct Attempt {
  RunResult result;
  std::uint64_t seed = 0;
};

// Runs seeds 0, 1, ... until the count matches; returns the last attempt.
Attempt run_until(const Problem& p, std::size_t kstar, std::size_t want, std::vector<std::size_t>* counts = nullptr) {
  Attempt a;
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
    a.result = run(p, defaults(seed, kstar));
    a.seed = seed;
    if (counts) counts->push_back(a.result.solutions.size());
    if (a.result.solutions.size() == want) break;
  }
  return a;
}

// One default central run per n, shared by several criteria.
const RunResult& central(int n) {
  static std::map<int, Attempt> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, run_until(Problem(n), 100, kCentralCounts.at(n))).first;
  return it->second.result;
}

// Table settings for the balanced runs use k* = 500.
const RunResult& balanced(double sy) {
  static std::map<double, Attempt> cache;
  auto it = cache.find(sy);
  if (it == cache.end()) {
    std::size_t want = 0;
    for (const auto& [s, c] : kBalancedCounts)
      if (s == sy) want = c;
    it = cache.emplace(sy, run_until(Problem(5, 1.0, 1.0, sy), 500, want)).first;
  }
  return it->second.result;
}

int criterion_1(Line& out) {
  for (int n = 3; n <= 7; ++n) {
    std::vector<std::size_t> counts;
    const Problem p(n);
    const auto a = run_until(p, 100, kCentralCounts.at(n), &counts);
    const bool ok = a.result.solutions.size() == kCentralCounts.at(n) && a.result.stats.wall_time_s <= kSmallRunLimitS;
    if (!ok) out.fail();
    out.msg << " n=" << n << ":" << a.result.solutions.size() << "/" << kCentralCounts.at(n) << "(seed " << a.seed
            << ", " << std::fixed << std::setprecision(1) << a.result.stats.wall_time_s << "s)";
  }
  return 0;
}

int criterion_2(Line& out) {
  std::vector<std::size_t> counts;
  const auto a = run_until(Problem(8), 100, 20, &counts);
  if (a.result.solutions.size() != 20 || a.result.stats.wall_time_s > kEightRunLimitS) out.fail();
  out.msg << " n=8: N_sol=" << a.result.solutions.size() << "/20 seed " << a.seed << ", " << std::fixed
          << std::setprecision(1) << a.result.stats.wall_time_s << "s";
  return 0;
}

int criterion_3(Line& out) {
  for (int n = 3; n <= 8; ++n) {
    const auto& r = central(n);
    const auto res = morse_equality_check(Problem(n), r.solutions);
    if (!res.is_zero()) out.fail();
    out.msg << " n=" << n << ":" << res.to_string();
  }
  return 0;
}

int criterion_4(Line& out) {
  for (const auto& [sy, want] : kBalancedCounts) {
    std::vector<std::size_t> counts;
    const auto a = run_until(Problem(5, 1.0, 1.0, sy), 500, want, &counts);
    if (a.result.solutions.size() != want) out.fail();
    out.msg << " sigma_y=" << sy << ":" << a.result.solutions.size() << "/" << want << " (seeds tried:";
    for (auto c : counts) out.msg << " " << c;
    out.msg << ")";
  }
  return 0;
}

// Every solution of the central runs n = 3..8 and the three balanced runs.
std::vector<std::pair<Problem, const Solution*>> all_solutions() {
  std::vector<std::pair<Problem, const Solution*>> v;
  for (int n = 3; n <= 8; ++n)
    for (const auto& s : central(n).solutions.entries()) v.emplace_back(Problem(n), &s);
  for (const auto& [sy, want] : kBalancedCounts)
    for (const auto& s : balanced(sy).solutions.entries()) v.emplace_back(Problem(5, 1.0, 1.0, sy), &s);
  return v;
}

int criterion_5(Line& out) {
  double worst_f = 0, worst_c = 0, worst_i = 0, worst_ac = 0;
  const auto sols = all_solutions();
  for (const auto& [p, s] : sols) {
    const auto b = basic_checks(p, s->point);
    worst_f = std::max(worst_f, objective(p, s->point.coords()));
    worst_c = std::max(worst_c, b.com_norm);
    worst_i = std::max(worst_i, b.inertia_residual);
    if (p.mode() == Mode::central) worst_ac = std::max(worst_ac, albouy_chenciner_residual(p, s->point));
  }
  if (!(worst_f < kRootTol && worst_c < kComTol && worst_i < kInertiaTol && worst_ac < kAcTol)) out.fail();
  out.msg << " solutions=" << sols.size() << std::scientific << std::setprecision(2) << " max F=" << worst_f
          << " max |c|=" << worst_c << " max |I-1|=" << worst_i << " max Delta=" << worst_ac;
  return 0;
}

int criterion_6(Line& out) {
  for (int n = 3; n <= 6; ++n) {
    int good = 0;
    const auto& r = central(n);
    for (const auto& s : r.solutions.entries()) {
      const auto k = krawczyk_certificate(Problem(n), s.point, kKrawczykRadius);
      if (k.zero_in_f && k.unique) ++good;
    }
    if (good != static_cast<int>(r.solutions.size())) out.fail();
    out.msg << " n=" << n << ":" << good << "/" << r.solutions.size();
  }
  return 0;
}

int criterion_7(Line& out) {
  double worst = 0;
  std::size_t over = 0;
  const auto sols = all_solutions();
  for (const auto& [p, s] : sols) {
    const auto t = quadratic_rms_test(p, s->point, kRmsRadius, kRmsSamples, 0);
    worst = std::max(worst, t.rms);
    if (!(t.rms < kRmsBound)) ++over;
  }
  if (over > 0) out.fail();
  out.msg << " solutions=" << sols.size() << " above bound=" << over << std::scientific << std::setprecision(2)
          << " max RMS=" << worst << " (bound " << kRmsBound << ")";
  return 0;
}

int criterion_8(Line& out) {
  const Problem p(3);
  const auto& set = central(3).solutions;
  const Solution* tri = nullptr;
  const Solution* eul = nullptr;
  for (const auto& s : set.entries()) {
    if (is_equivalent(s.signature, signature(fixtures::triangle()))) tri = &s;
    if (is_equivalent(s.signature, signature(fixtures::euler()))) eul = &s;
  }
  if (!tri || !eul) {
    out.fail();
    out.msg << " triangle found=" << (tri != nullptr) << " collinear found=" << (eul != nullptr);
    return 0;
  }
  double err = 0;
  auto chk = [&](double got, double want) { err = std::max(err, std::abs(got - want)); };
  const auto dt = derived_scalars(p, tri->point);
  chk(dt.potential, 3.0);
  chk(dt.lambda, 3.0);
  chk(albouy_chenciner_residual(p, tri->point), 0.0);
  for (double d : tri->signature) chk(d, 1.0);
  const auto de = derived_scalars(p, eul->point);
  const double a = 1.0 / std::numbers::sqrt2;
  chk(eul->signature[0], a);
  chk(eul->signature[1], a);
  chk(eul->signature[2], 2 * a);
  chk(de.lambda, 5.0 * std::numbers::sqrt2 / 2.0);
  chk(albouy_chenciner_residual(p, eul->point), 0.0);
  const int ht = morse_index(p, tri->point), he = morse_index(p, eul->point);
  const auto it = isotropy_index(p, tri->point), ie = isotropy_index(p, eul->point);
  const auto kt = krawczyk_certificate(p, tri->point), ke = krawczyk_certificate(p, eul->point);
  const bool ok = err < kOracleTol && ht == 0 && he == 1 && it == Rational(3) && ie == Rational(2) && kt.unique &&
                  ke.unique;
  if (!ok) out.fail();
  out.msg << " triangle h=" << ht << " i=" << it.to_string() << "; collinear h=" << he << " i=" << ie.to_string()
          << std::scientific << std::setprecision(2) << "; max deviation " << err;
  return 0;
}

int criterion_9(Line& out) {
  std::mt19937_64 rng(99);
  double worst = 0;
  for (int n : {2, 3, 5, 8, 12}) {
    for (double sy : {1.0, 0.3}) {
      const Problem p(n, 1.0, 1.0, sy);
      for (int t = 0; t < 5; ++t) {
        const auto q = fixtures::random_config(n, rng, 0.2);
        const auto fdr = fixtures::fd_jacobian(
            [&](std::span<const double> x) { return residuals(p, Configuration({x.begin(), x.end()})); },
            q.coords());
        worst = std::max(worst, fixtures::rel_diff(residual_jacobian(p, q), fdr));
        const auto fdg = fixtures::fd_jacobian(
            [&](std::span<const double> x) {
              return std::vector<double>{potential(p, Configuration({x.begin(), x.end()}))};
            },
            q.coords());
        const auto g = gradient(p, q);
        Matrix gm(1, g.size());
        for (std::size_t k = 0; k < g.size(); ++k) gm(0, k) = g[k];
        worst = std::max(worst, fixtures::rel_diff(gm, fdg));
      }
    }
  }
  const bool fd_ok = worst < kFdTol;

  const auto fuzz = interval_fuzz(20240501, kFuzzCases);
  const bool fuzz_ok = fuzz.checked == kFuzzCases && fuzz.violations == 0;

  bool closure_ok = true;
  for (double sy : {1.0, 0.4}) {
    const Problem p(5, 1.0, 1.0, sy);
    std::mt19937_64 r2(3);
    Configuration root;
    for (;;) {
      std::vector<double> s(p.dim());
      for (std::size_t k = 0; k < s.size(); ++k)
        s[k] = std::uniform_real_distribution<double>(p.box().lower[k], p.box().upper[k])(r2);
      const auto res = minimize(p, s);
      if (res.status == SearchStatus::converged_root) {
        root = res.point;
        break;
      }
    }
    auto sol = [&](const Configuration& q) {
      return Solution{q, objective(p, q.coords()), signature(q), hessian_spectrum(p, q)};
    };
    SolutionSet set;
    set.insert(sol(root));
    const int perm[] = {4, 2, 0, 1, 3};
    for (const auto& g : {rotated(root, std::numbers::pi), conjugated_x(root), conjugated_y(root),
                          permuted(root, perm), permuted(conjugated_y(root), perm)})
      set.insert(sol(g));
    if (p.mode() == Mode::central) set.insert(sol(rotated(root, 0.77)));
    closure_ok = closure_ok && set.size() == 1;
  }

  DoubleBox db(Problem(5).box(), 1);
  for (int k = 0; k < kDoubleBoxIterations; ++k) db.next_batch(1000);
  const double db_mean = db.state().mean;
  const bool db_ok = std::abs(db_mean - 0.5) < kDoubleBoxTol;

  if (!(fd_ok && fuzz_ok && closure_ok && db_ok)) out.fail();
  out.msg << std::scientific << std::setprecision(2) << " finite-difference max rel err=" << worst
          << "; fuzz " << fuzz.checked << " cases, " << fuzz.violations << " violations; closure "
          << (closure_ok ? "one entry" : "BROKEN") << std::fixed << std::setprecision(4)
          << "; Double-Box mean delta=" << db_mean;
  return 0;
}

// Optional targets: counts are lower bounds. Passes when every reported
// solution is a verified distinct root and no count exceeds the reference.
int criterion_10(Line& out, bool full) {
  struct Target {
    const char* name;
    Problem p;
    RunConfig cfg;
    std::size_t reference;
  };
  auto cfg = [&](SamplerTag tag, std::size_t ns0, std::size_t k, std::size_t kstar) {
    RunConfig c;
    c.ns0 = ns0;
    c.subsets = k;
    c.k_star = kstar;
    c.sampler = {tag, 0};
    return c;
  };
  std::vector<Target> targets;
  if (full) {
    targets.push_back({"n=11", Problem(11), cfg(SamplerTag::chaotic, 2000, 2000, 500), 114});
    targets.push_back({"n=12", Problem(12), cfg(SamplerTag::faure, 1000, 1000, 200), 191});
    targets.push_back({"n=10 sigma_y=0.3", Problem(10, 1.0, 1.0, 0.3), cfg(SamplerTag::chaotic, 2000, 2000, 500), 270});
  } else {
    targets.push_back({"n=11", Problem(11), cfg(SamplerTag::chaotic, 500, 20, 20), 114});
    targets.push_back({"n=12", Problem(12), cfg(SamplerTag::faure, 500, 10, 10), 191});
    targets.push_back({"n=10 sigma_y=0.3", Problem(10, 1.0, 1.0, 0.3), cfg(SamplerTag::chaotic, 500, 10, 10), 270});
  }
  out.msg << (full ? " full budget:" : " reduced budget:");
  for (const auto& t : targets) {
    const auto r = run(t.p, t.cfg);
    bool ok = r.solutions.size() <= t.reference;
    std::size_t asym = 0;
    for (const auto& s : r.solutions.entries()) {
      ok = ok && s.objective < kRootTol;
      if (isotropy_index(t.p, s.point) == Rational(1, 2)) ++asym;
    }
    if (!ok) out.fail();
    out.msg << " " << t.name << ":" << r.solutions.size() << " (reference " << t.reference << ", no symmetry axis "
            << asym << ", " << std::fixed << std::setprecision(0) << r.stats.wall_time_s << "s)";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> which;
  bool full = false;
  app.add_option("--criterion", which, "criterion numbers (default: 1-9)")->check(CLI::Range(1, 10));
  app.add_flag("--full", full, "criterion 10 at the reference budgets (hours)");
  CLI11_PARSE(app, argc, argv);
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  const std::map<int, std::function<int(Line&)>> table{
      {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4}, {5, criterion_5},
      {6, criterion_6}, {7, criterion_7}, {8, criterion_8}, {9, criterion_9},
      {10, [&](Line& l) { return criterion_10(l, full); }}};

  bool all = true;
  for (int c : which) {
    Line line;
    const auto t0 = std::chrono::steady_clock::now();
    table.at(c)(line);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s %s [%.1fs]\n", c, line.pass ? "PASS" : "FAIL", line.msg.str().c_str(), secs);
    std::fflush(stdout);
    all = all && line.pass;
  }
  return all ? 0 : 1;
}
