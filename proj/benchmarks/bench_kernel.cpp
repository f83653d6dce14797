#include <benchmark/benchmark.h>

#include "buoyancy/diagnostics.hpp"
#include "buoyancy/directions.hpp"
#include "buoyancy/flotation.hpp"
#include "buoyancy/kernel.hpp"
#include "buoyancy/zoo.hpp"

namespace bm = benchmark;
using namespace buoyancy;

static void BM_Clip(bm::State& st) {
  const ConvexBody ball = make_ball(1.0, static_cast<int>(st.range(0)));
  const HalfSpace hs{Vector{{0.3, -0.2, 0.93}}.normalized(), 0.1};
  for (auto _ : st) bm::DoNotOptimize(clip(ball, hs));
  st.counters["facets"] = ball.mesh_facets();
}
BENCHMARK(BM_Clip)->Arg(500)->Arg(2000)->Arg(8000);

static void BM_CapMoments(bm::State& st) {
  const ConvexBody ball = make_ball(1.0, static_cast<int>(st.range(0)));
  const Vector xi = Vector{{0.3, -0.2, 0.93}}.normalized();
  for (auto _ : st) bm::DoNotOptimize(cap_moments(ball, xi, 0.1));
}
BENCHMARK(BM_CapMoments)->Arg(500)->Arg(2000)->Arg(8000);

static void BM_Waterline(bm::State& st) {
  const ConvexBody ball = make_ball(1.0, 2000);
  const Vector xi = Vector{{0.3, -0.2, 0.93}}.normalized();
  const double delta = 0.3 * ball.volume();
  for (auto _ : st) bm::DoNotOptimize(find_waterline(ball, xi, delta));
}
BENCHMARK(BM_Waterline);

static void BM_Scan(bm::State& st) {
  const ConvexBody p = make_random_polytope(60, 1);
  const auto dirs = direction_grid(3, static_cast<std::size_t>(st.range(0)));
  ScanOptions opt;
  opt.jobs = static_cast<std::size_t>(st.range(1));
  for (auto _ : st)
    bm::DoNotOptimize(equilibrium_scan(p, 0.4 * p.volume(), dirs, 1e-6, opt));
}
BENCHMARK(BM_Scan)->Args({200, 1})->Args({200, 4})->Unit(bm::kMillisecond);

static void BM_FloatingBody(bm::State& st) {
  const ConvexBody ball = make_ball(1.0, 2000);
  const auto dirs = fibonacci_directions(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) bm::DoNotOptimize(floating_body(ball, 0.05 * ball.volume(), dirs));
}
BENCHMARK(BM_FloatingBody)->Arg(100)->Arg(400)->Unit(bm::kMillisecond);

BENCHMARK_MAIN();
