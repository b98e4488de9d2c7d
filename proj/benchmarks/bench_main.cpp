#include <benchmark/benchmark.h>

#include "shsim/environment.hpp"
#include "shsim/pv_array.hpp"
#include "shsim/sim_engine.hpp"

namespace {

shsim::SystemConfig basic_config() {
  shsim::SystemConfig config;
  config.panel.count = 2;
  config.battery.count = 2;
  config.loads = {{"house", shsim::LoadKind::DC, 250.0, 5}};
  return config;
}

void BM_MppScan(benchmark::State& state) {
  const auto model = shsim::fit_model(shsim::PanelSpec{});
  const double step_v = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(shsim::mpp_scan(model, 1000.0, 25.0, step_v));
  }
}
BENCHMARK(BM_MppScan)->Arg(10)->Arg(100)->Arg(1000);

void BM_DayRun(benchmark::State& state) {
  const auto config = basic_config();
  const auto profile =
      shsim::clear_sky_day(8.0, 667.0, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(shsim::run(config, profile));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(profile.samples.size()));
}
BENCHMARK(BM_DayRun)->Arg(60)->Arg(300);

}  // namespace

BENCHMARK_MAIN();
