// ccbc: search, verify and report planar central and balanced configurations.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ccbc/error.hpp"
#include "ccbc/kernels.hpp"
#include "ccbc/minfinder.hpp"
#include "ccbc/problem.hpp"
#include "ccbc/report.hpp"
#include "ccbc/verify.hpp"

namespace fs = std::filesystem;
using namespace ccbc;

namespace {

struct Options {
  int n = 0;
  double mass = 1.0;
  double sigma_x = 1.0;
  double sigma_y = 1.0;
  std::string sampler = "faure";
  std::uint64_t seed = 0;
  std::size_t ns0 = 1000;
  std::size_t k = 1000;
  std::size_t kstar = 100;
  std::string stop = "stagnation";
  double eps_db = 1e-6;
  std::string out = "ccbc_out";
  std::string verify = "full";
  bool plot = false;
  int threads = 0;
  std::size_t wave = 16;
  bool c1_global = false;
  bool quiet = false;
  std::string config;

  double sy_from = 0.1;
  double sy_to = 0.8;
  double sy_step = 0.1;
};

void add_common(CLI::App* app, Options& o) {
  app->add_option("--n", o.n, "number of bodies")->required()->check(CLI::Range(2, 32));
  app->add_option("--mass", o.mass, "common mass")->check(CLI::PositiveNumber);
  app->add_option("--sigma-x", o.sigma_x, "S = diag(sigma_x, sigma_y)")->check(CLI::PositiveNumber);
  app->add_option("--sampler", o.sampler, "pseudo_random|chaotic|faure|sobol|latin_hypercube")
      ->check(CLI::IsMember({"pseudo_random", "chaotic", "faure", "sobol", "latin_hypercube"}));
  app->add_option("--seed", o.seed, "sampler seed");
  app->add_option("--ns0", o.ns0, "samples per subset")->check(CLI::PositiveNumber);
  app->add_option("--k", o.k, "number of subsets K")->check(CLI::PositiveNumber);
  app->add_option("--kstar", o.kstar, "stagnation window")->check(CLI::PositiveNumber);
  app->add_option("--stop", o.stop, "stagnation|double-box")->check(CLI::IsMember({"stagnation", "double-box"}));
  app->add_option("--eps-db", o.eps_db, "Double-Box variance tolerance")->check(CLI::PositiveNumber);
  app->add_option("--out", o.out, "output directory");
  app->add_option("--verify", o.verify, "none|fast|full")->check(CLI::IsMember({"none", "fast", "full"}));
  app->add_flag("--plot", o.plot, "write one SVG per solution");
  app->add_option("--threads", o.threads, "worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);
  app->add_option("--wave", o.wave, "start points searched concurrently")->check(CLI::PositiveNumber);
  app->add_flag("--c1-global", o.c1_global, "test C1 against all distinct solutions");
  app->add_flag("--quiet", o.quiet, "no progress output");
  app->add_option("--config", o.config, "flat key = value file; flags override it");
}

RunConfig run_config(const Options& o) {
  RunConfig c;
  c.ns0 = o.ns0;
  c.subsets = o.k;
  c.k_star = o.kstar;
  c.eps_db = o.eps_db;
  c.stop_rule = parse_stop_rule(o.stop);
  c.sampler = {parse_sampler_tag(o.sampler), o.seed};
  c.wave = o.wave;
  c.c1_global = o.c1_global;
  c.validate();
  return c;
}

fs::path prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory '" + dir.string() + "'");
  const auto probe = dir / ".ccbc_write_test";
  {
    std::ofstream f(probe);
    if (!f) throw ConfigError("output directory '" + dir.string() + "' is not writable");
  }
  fs::remove(probe, ec);
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  return f;
}

SummaryRow run_one(const Options& o, double sigma_y, const fs::path& dir) {
  const Problem p(o.n, o.mass, o.sigma_x, sigma_y);
  const RunConfig cfg = run_config(o);
  const VerifyLevel level = parse_verify_level(o.verify);
  prepare_dir(dir);

  ProgressFn progress;
  if (!o.quiet)
    progress = [](const RunStats& s) {
      if (s.subsets_used % 10 == 0)
        std::fprintf(stderr, "\rsubset %zu  N_sol %zu  searches %zu  r_t %.3g", s.subsets_used, s.nsol_history.back(),
                     s.local_searches, s.typical_distance);
    };
  const RunResult res = run(p, cfg, progress);
  if (!o.quiet) std::fprintf(stderr, "\n");

  VerifyOptions vopt;
  vopt.level = level;
  vopt.degen_tol = cfg.degen_tol;
  vopt.seed = o.seed;

  std::optional<Rational> morse;
  if (p.mode() == Mode::central && level != VerifyLevel::none && !res.solutions.empty())
    morse = morse_equality_check(p, res.solutions, cfg.degen_tol);

  std::vector<Configuration> degenerate;
  for (const auto& d : res.degenerate) degenerate.push_back(d.point);

  for (std::size_t i = 0; i < res.solutions.size(); ++i) {
    const auto& sol = res.solutions[i];
    SolutionReport rep{o.n, o.mass, o.sigma_x, sigma_y, sol, verify_solution(p, sol, vopt), degenerate, morse};
    char name[32];
    std::snprintf(name, sizeof name, "solution_%03zu", i + 1);
    auto f = open_out(dir / (std::string(name) + ".txt"));
    write_solution_report(f, rep);
    if (o.plot) {
      auto svg = open_out(dir / (std::string(name) + ".svg"));
      plot_configuration(svg, p, sol.point, name);
    }
  }

  SummaryRow row{o.n, o.sigma_x, sigma_y, res.solutions.size(), o.ns0, o.k, o.kstar, res.stats.k0,
                 res.stats.wall_time_s, o.sampler, o.seed};
  std::cout << "n=" << o.n << " sigma_y=" << format_double(sigma_y) << " N_sol=" << row.n_sol << " k0=" << row.k0
            << " subsets=" << res.stats.subsets_used << " searches=" << res.stats.local_searches
            << " degenerate=" << res.degenerate.size();
  if (morse) std::cout << " morse_residual=" << morse->to_string();
  std::cout << '\n';
  return row;
}

// Splices the --config file into the argument list: every `key = value` line
// becomes `--key value` unless the flag is already on the command line.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  auto given = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
  };
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  std::vector<std::string> extra;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string flag = "--" + key;
    if (key == "config" || given(flag)) continue;
    if (value == "true") {
      extra.push_back(flag);
    } else if (value != "false") {
      extra.push_back(flag);
      extra.push_back(value);
    }
  }
  // Subcommand first, file values next, explicit flags last.
  std::vector<std::string> out;
  if (!args.empty()) out.push_back(args.front());
  out.insert(out.end(), extra.begin(), extra.end());
  if (!args.empty()) out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planar central and balanced configurations of the equal-mass n-body problem"};
  app.require_subcommand(1);
  Options o;

  auto* find = app.add_subcommand("find", "search one (sigma_x, sigma_y) setting");
  add_common(find, o);
  find->add_option("--sigma-y", o.sigma_y, "S = diag(sigma_x, sigma_y)")->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "search a range of sigma_y values");
  add_common(sweep, o);
  sweep->add_option("--sigma-y-from", o.sy_from)->check(CLI::PositiveNumber);
  sweep->add_option("--sigma-y-to", o.sy_to)->check(CLI::PositiveNumber);
  sweep->add_option("--sigma-y-step", o.sy_step)->check(CLI::PositiveNumber);

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    set_thread_limit(o.threads);
    const fs::path out(o.out);
    std::vector<SummaryRow> rows;
    if (*find) {
      rows.push_back(run_one(o, o.sigma_y, out));
    } else {
      if (o.sy_to < o.sy_from) throw ConfigError("--sigma-y-to must not be below --sigma-y-from");
      const auto steps = static_cast<long>(std::floor((o.sy_to - o.sy_from) / o.sy_step + 1e-9));
      for (long i = 0; i <= steps; ++i) {
        const double sy = o.sy_from + static_cast<double>(i) * o.sy_step;
        char sub[48];
        std::snprintf(sub, sizeof sub, "sigma_y_%.6g", sy);
        rows.push_back(run_one(o, sy, out / sub));
      }
    }
    auto f = open_out(prepare_dir(out) / "summary.csv");
    write_summary_header(f);
    for (const auto& r : rows) write_summary_row(f, r);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
