// Parallel kernels against their serial twins on the shipped fixtures.
//   rcplan_bench --benchmark_filter=Raster

#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "rcplan/io/scenario_file.hpp"
#include "rcplan/oracle/monte_carlo.hpp"
#include "rcplan/planner/planner.hpp"
#include "rcplan/risk/raster.hpp"
#include "rcplan/safety/verify.hpp"

using namespace rcplan;

namespace {

const planner::Scenario& scenario(const char* name) {
  static std::map<std::string, planner::Scenario> cache;
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(name, io::load_scenario(std::string(RCPLAN_FIXTURES) + "/" + name)).first;
  return it->second;
}

template <bool Parallel>
void Raster(benchmark::State& state) {
  const auto& sc = scenario("expA1.scn");
  const auto grid = risk::GridSpec::uniform(sc.workspace_lo, sc.workspace_hi, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto r = Parallel ? risk::rasterize(sc.contours[0], grid) : risk::rasterize_serial(sc.contours[0], grid);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * grid.size());
}

template <bool Parallel>
void MonteCarlo(benchmark::State& state) {
  const auto& sc = scenario("example1.scn");
  std::vector<oracle::Probe> probes;
  for (int i = 0; i < 64; ++i) probes.push_back({{-0.6 + 0.01 * i, 0.1}, std::nullopt});
  const oracle::McConfig cfg{static_cast<std::size_t>(state.range(0)), 1, 0};
  for (auto _ : state) {
    auto e = Parallel ? oracle::mc_points(*sc.obstacles[0], probes, cfg)
                      : oracle::mc_points_serial(*sc.obstacles[0], probes, cfg);
    benchmark::DoNotOptimize(e);
  }
  state.SetItemsProcessed(state.iterations() * probes.size() * cfg.samples);
}

template <bool Parallel>
void Verify(benchmark::State& state) {
  const auto& sc = scenario("cluttered2d.scn");
  planner::PlannerParams pp;
  pp.seed = 1;
  const auto plan = planner::plan_rrt_static(sc, pp);
  if (!plan.solved()) {
    state.SkipWithError("fixture plan failed");
    return;
  }
  for (auto _ : state) {
    auto r = Parallel ? safety::verify_trajectory(sc.contours, *plan.trajectory)
                      : safety::verify_trajectory_serial(sc.contours, *plan.trajectory);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(Raster<true>)->Arg(101)->Arg(301)->Unit(benchmark::kMillisecond);
BENCHMARK(Raster<false>)->Arg(101)->Arg(301)->Unit(benchmark::kMillisecond);
BENCHMARK(MonteCarlo<true>)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(MonteCarlo<false>)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(Verify<true>)->Unit(benchmark::kMillisecond);
BENCHMARK(Verify<false>)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
