// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <numeric>

#include "ccbc/kernels.hpp"
#include "ccbc/problem.hpp"
#include "ccbc/sampler.hpp"
#include "ccbc/verify.hpp"

namespace {

ccbc::PointSet samples(int bodies, std::size_t count) {
  const ccbc::Problem p(bodies);
  ccbc::Sampler s({ccbc::SamplerTag::faure, 0}, p.box());
  return s.next_batch(count);
}

void nearest(benchmark::State& st, ccbc::Exec exec) {
  const auto pts = samples(static_cast<int>(st.range(0)), 1000);
  const auto fn = ccbc::kernels::nearest_prior_distances(exec);
  for (auto _ : st) benchmark::DoNotOptimize(fn(pts));
}

void searches(benchmark::State& st, ccbc::Exec exec) {
  const ccbc::Problem p(static_cast<int>(st.range(0)));
  const auto pts = samples(p.bodies(), 32);
  std::vector<std::size_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  const auto fn = ccbc::kernels::search_batch(exec);
  for (auto _ : st) benchmark::DoNotOptimize(fn(p, pts, idx, {}));
}

void quadratic(benchmark::State& st, ccbc::Exec exec) {
  const ccbc::Problem p(3);
  const double a = 1.0 / std::sqrt(3.0);
  const std::vector<double> tri{a, 0.0, -0.5 * a, 0.5, -0.5 * a, -0.5};
  const auto pts = samples(3, 10000);
  const auto fn = ccbc::kernels::quadratic_errors(exec);
  for (auto _ : st) benchmark::DoNotOptimize(fn(p, tri, std::nullopt, pts));
}

}  // namespace

BENCHMARK_CAPTURE(nearest, serial, ccbc::Exec::serial)->Arg(4)->Arg(8);
BENCHMARK_CAPTURE(nearest, omp, ccbc::Exec::parallel)->Arg(4)->Arg(8);
BENCHMARK_CAPTURE(searches, serial, ccbc::Exec::serial)->Arg(4)->Arg(8);
BENCHMARK_CAPTURE(searches, omp, ccbc::Exec::parallel)->Arg(4)->Arg(8);
BENCHMARK_CAPTURE(quadratic, serial, ccbc::Exec::serial);
BENCHMARK_CAPTURE(quadratic, omp, ccbc::Exec::parallel);

BENCHMARK_MAIN();
