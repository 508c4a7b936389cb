#include "ccbc/minfinder.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "ccbc/error.hpp"
#include "ccbc/nbody.hpp"

namespace ccbc {

std::string_view to_string(StopRule r) { return r == StopRule::stagnation ? "stagnation" : "double-box"; }

StopRule parse_stop_rule(std::string_view name) {
  if (name == "stagnation") return StopRule::stagnation;
  if (name == "double-box" || name == "double_box") return StopRule::double_box;
  throw ConfigError("unknown stop rule '" + std::string(name) + "'");
}

void RunConfig::validate() const {
  if (ns0 < 1) throw ConfigError("ns0 must be at least 1");
  if (subsets < 1) throw ConfigError("K must be at least 1");
  if (k_star < 1 || k_star > subsets) throw ConfigError("k_star must satisfy 1 <= k_star <= K");
  if (wave < 1) throw ConfigError("wave size must be at least 1");
  for (double t : {root_tol, degen_tol, match_tol})
    if (!(t > 0.0)) throw ConfigError("tolerances must be positive");
  if (stop_rule == StopRule::double_box && !(eps_db > 0.0)) throw ConfigError("eps_db must be positive");
}

std::vector<double> signature(const Configuration& q) { return mutual_distances(q); }

std::vector<double> signature(const Problem&, const Configuration& q) { return mutual_distances(q); }

bool is_equivalent(std::span<const double> a, std::span<const double> b, double tol) {
  if (a.size() != b.size()) throw std::invalid_argument("signature length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol * (1.0 + std::max(std::abs(a[i]), std::abs(b[i])))) return false;
  return true;
}

bool signature_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t SolutionSet::find(std::span<const double> sig) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (is_equivalent(entries_[i].signature, sig, tol_)) return i;
  return entries_.size();
}

bool SolutionSet::insert(Solution s) {
  if (s.signature.empty()) s.signature = signature(s.point);
  if (find(s.signature) != entries_.size()) return false;
  entries_.push_back(std::move(s));
  return true;
}

void SolutionSet::sort() {
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const Solution& a, const Solution& b) { return signature_less(a.signature, b.signature); });
}

namespace {

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

bool near_any(std::span<const double> s, std::span<const Configuration> minima, double radius) {
  for (const auto& q : minima)
    if (distance(s, q.coords()) < radius) return true;
  return false;
}

}  // namespace

double min_pairwise_distance(std::span<const Configuration> pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, distance(pts[i].coords(), pts[j].coords()));
  return best;
}

bool is_start_point(std::span<const double> s, double nearest_prior, std::span<const Configuration> minima,
                    const StartControls& c) {
  if (std::isfinite(c.d_min) && near_any(s, minima, c.d_min)) return false;
  if (c.local_searches > 0) {
    const double r_t = c.distance_sum / static_cast<double>(c.local_searches);
    if (nearest_prior < r_t) return false;
  }
  return true;
}

bool is_start_point(std::span<const double> s, std::span<const Configuration> minima, const PointSet& prior_samples,
                    std::size_t local_searches, double distance_sum) {
  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < prior_samples.size(); ++i) nearest = std::min(nearest, distance(s, prior_samples[i]));
  return is_start_point(s, nearest, minima, {local_searches, distance_sum, min_pairwise_distance(minima)});
}

std::vector<double> hessian_spectrum(const Problem& p, const Configuration& q) {
  return sym_eigenvalues(hessian(p, q));
}

bool is_degenerate(Mode mode, std::span<const double> eigenvalues, double degen_tol) {
  const std::size_t k = mode == Mode::central ? 1 : 0;
  if (eigenvalues.size() <= k) return true;
  return std::abs(eigenvalues[k]) < degen_tol;
}

RunResult run(const Problem& p, const RunConfig& cfg, const ProgressFn& progress) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const auto nearest_fn = kernels::nearest_prior_distances(cfg.exec);
  const auto search_fn = kernels::search_batch(cfg.exec);
  SearchOptions search = cfg.search;
  search.root_tol = cfg.root_tol;

  RunResult out{SolutionSet(cfg.match_tol), {}, {}};
  RunStats& st = out.stats;

  const bool use_db = cfg.stop_rule == StopRule::double_box;
  const bool db_is_stream = use_db && cfg.sampler.tag == SamplerTag::pseudo_random;
  std::optional<Sampler> sampler;
  if (!db_is_stream) sampler.emplace(cfg.sampler, p.box());
  std::optional<DoubleBox> dbox;
  if (use_db)
    dbox.emplace(p.box(), db_is_stream ? cfg.sampler.seed : cfg.sampler.seed ^ 0x5851f42d4c957f2dULL);

  std::size_t L = 0;
  double R_t = 0.0;
  std::vector<std::size_t> idx;

  for (std::size_t k = 1; k <= cfg.subsets; ++k) {
    PointSet batch;
    if (db_is_stream) {
      batch = dbox->next_batch(cfg.ns0);
    } else {
      batch = sampler->next_batch(cfg.ns0);
      if (dbox) dbox->next_batch(cfg.ns0);
    }
    st.samples += batch.size();
    const auto nn = nearest_fn(batch);

    std::vector<Configuration> q0;
    std::vector<double> q0_F;
    double d_min = std::numeric_limits<double>::infinity();

    for (std::size_t begin = 0; begin < batch.size(); begin += cfg.wave) {
      const std::size_t end = std::min(batch.size(), begin + cfg.wave);
      StartControls controls{L, R_t, std::numeric_limits<double>::infinity()};
      std::vector<Configuration> global_q;
      std::span<const Configuration> minima = q0;
      if (cfg.c1_global) {
        global_q.reserve(out.solutions.size());
        for (const auto& s : out.solutions.entries()) global_q.push_back(s.point);
        minima = global_q;
        controls.d_min = min_pairwise_distance(global_q);
      } else {
        controls.d_min = d_min;
      }
      idx.clear();
      for (std::size_t j = begin; j < end; ++j)
        if (is_start_point(batch[j], nn[j], minima, controls)) idx.push_back(j);
      if (idx.empty()) continue;

      const auto results = search_fn(p, batch, idx, search);
      for (std::size_t r = 0; r < results.size(); ++r) {
        const auto& res = results[r];
        ++st.local_searches;
        switch (res.status) {
          case SearchStatus::failure: ++st.failures; continue;
          case SearchStatus::converged_root: ++st.roots; break;
          case SearchStatus::converged_stationary: ++st.stationary; break;
          case SearchStatus::iteration_cap: ++st.capped; break;
        }
        ++L;
        R_t += distance(batch[idx[r]], res.point.coords());
        if (res.status == SearchStatus::iteration_cap) continue;
        const double scale = 1.0 + std::sqrt(std::inner_product(res.point.coords().begin(), res.point.coords().end(),
                                                                 res.point.coords().begin(), 0.0));
        bool dup = false;
        for (const auto& q : q0)
          if (distance(q.coords(), res.point.coords()) < cfg.match_tol * scale) {
            dup = true;
            break;
          }
        if (dup) continue;
        for (const auto& q : q0) d_min = std::min(d_min, distance(q.coords(), res.point.coords()));
        q0.push_back(res.point);
        q0_F.push_back(res.objective);
      }
    }

    std::size_t before = out.solutions.size();
    for (std::size_t i = 0; i < q0.size(); ++i) {
      if (!(q0_F[i] < cfg.root_tol)) continue;
      auto sig = signature(q0[i]);
      if (out.solutions.find(sig) != out.solutions.size()) continue;
      bool seen_degenerate = false;
      for (const auto& d : out.degenerate)
        if (is_equivalent(d.signature, sig, cfg.match_tol)) seen_degenerate = true;
      if (seen_degenerate) continue;
      Solution s{q0[i], q0_F[i], std::move(sig), hessian_spectrum(p, q0[i])};
      if (is_degenerate(p.mode(), s.eigenvalues, cfg.degen_tol))
        out.degenerate.push_back(std::move(s));
      else
        out.solutions.insert(std::move(s));
    }

    st.subsets_used = k;
    st.nsol_history.push_back(out.solutions.size());
    if (out.solutions.size() > before) st.k0 = k;
    st.typical_distance = L > 0 ? R_t / static_cast<double>(L) : 0.0;
    if (dbox) {
      st.db_mean = dbox->state().mean;
      st.db_variance = dbox->state().variance;
    }
    st.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (progress) progress(st);

    bool stop = false;
    if (use_db) {
      stop = k >= 2 && dbox->state().variance < cfg.eps_db;
    } else if (k >= cfg.k_star) {
      const auto& h = st.nsol_history;
      stop = std::all_of(h.end() - static_cast<std::ptrdiff_t>(cfg.k_star), h.end(),
                         [&](std::size_t v) { return v == h.back(); });
    }
    if (stop) {
      st.stopped_early = k < cfg.subsets;
      break;
    }
  }
  if (st.k0 == 0 && !st.nsol_history.empty()) st.k0 = 1;
  out.solutions.sort();
  st.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace ccbc
