#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "shsim/errors.hpp"
#include "shsim/sim_engine.hpp"

using namespace shsim;
namespace fs = std::filesystem;

namespace {

SystemConfig house_config() {
  SystemConfig cfg;
  cfg.panel.count = 2;
  cfg.battery.count = 2;
  cfg.loads = {
      {"led_lighting", LoadKind::DC, 50.0, 9},
      {"fridge", LoadKind::AC, 120.0, 5},
  };
  return cfg;
}

ScenarioProfile night_profile(double hours, double ambient_c = 20.0) {
  ScenarioProfile p;
  p.step_s = 60.0;
  p.label = "night";
  const int n = static_cast<int>(hours * 3600.0 / p.step_s);
  for (int i = 0; i < n; ++i)
    p.samples.push_back({i * p.step_s, 0.0, ambient_c, false});
  return p;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "shsim_engine_test";
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("a clear 8 h day harvests into the expected band") {
  const auto profile = clear_sky_day(8.0, 667.0, 60.0);
  const auto result = run(house_config(), profile);

  CHECK(result.totals.harvested_wh > 1500.0);
  CHECK(result.totals.harvested_wh < 2500.0);
  CHECK(result.totals.delivered_wh > 0.0);
  CHECK(result.peak_delivered_w > 0.0);
  CHECK(result.fault_events.empty());
  CHECK(result.totals.conservation_residual() <= 1e-9);

  // noon sits at the profile midpoint; the tracker should be settled there
  const auto& noon = result.trace[result.trace.size() / 2];
  CHECK(noon.p_mpp_w > 340.0);
  CHECK(noon.p_mpp_w < 440.0);
  CHECK(noon.mode == ConverterMode::PWM);
}

TEST_CASE("night loads drain the battery and shed at the floor") {
  auto cfg = house_config();
  cfg.battery.count = 1;
  const auto result = run(cfg, night_profile(24.0));

  CHECK(result.totals.harvested_wh == 0.0);
  CHECK(result.totals.discharged_wh > 0.0);
  CHECK(result.totals.shed_wh > 0.0);  // one bank cannot carry 24 h
  // the floor is approached from above; the last unservable step leaves at
  // most one step's worth of unusable charge behind
  CHECK(result.end_soc >= cfg.battery.soc_min);
  CHECK(result.end_soc < cfg.battery.soc_min + 0.005);
  CHECK(result.totals.conservation_residual() <= 1e-9);
}

TEST_CASE("runs are deterministic for a fixed seed") {
  const auto profile = cloudy_modifier(clear_sky_day(8.0, 800.0, 300.0), 0.4, 99);
  const auto a = run(house_config(), profile, 1);
  const auto b = run(house_config(), profile, 1);
  REQUIRE(a.trace.size() == b.trace.size());
  for (size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].p_mpp_w == b.trace[i].p_mpp_w);
    CHECK(a.trace[i].soc == b.trace[i].soc);
    CHECK(a.trace[i].p_served_w == b.trace[i].p_served_w);
  }
  CHECK(a.totals.harvested_wh == b.totals.harvested_wh);
  CHECK(a.end_soc == b.end_soc);
}

TEST_CASE("out-of-window panel temperature raises one collapsed fault event") {
  auto profile = clear_sky_day(8.0, 667.0, 60.0);
  // a two-hour heat spike straddling noon
  const size_t mid = profile.samples.size() / 2;
  for (size_t i = mid - 60; i < mid + 60; ++i) profile.samples[i].ambient_temp_c = 88.0;

  const auto result = run(house_config(), profile);
  REQUIRE(result.fault_events.size() == 1);
  CHECK(result.fault_events[0].code == "PANEL_TEMP");

  // nothing is harvested or served while faulted
  for (const auto& row : result.trace) {
    if (!row.fault.empty()) {
      CHECK(row.p_mpp_w == 0.0);
      CHECK(row.p_served_w == 0.0);
      CHECK(row.mode == ConverterMode::Fault);
    }
  }
  CHECK(result.totals.conservation_residual() <= 1e-9);
}

TEST_CASE("conservation holds over randomized scenarios (property)") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> hours(2.0, 12.0), peak(100.0, 1100.0),
      att(0.0, 0.8);
  std::uniform_int_distribution<int> panels(1, 4), batts(0, 3);
  for (int trial = 0; trial < 20; ++trial) {
    auto cfg = house_config();
    cfg.panel.count = panels(rng);
    cfg.battery.count = batts(rng);
    auto profile = cloudy_modifier(clear_sky_day(hours(rng), peak(rng), 300.0),
                                   att(rng), trial);
    const auto result = run(cfg, profile, trial);
    CHECK(result.totals.conservation_residual() <= 1e-9);
    CHECK(result.end_soc >= cfg.battery.soc_min - 1e-12);
    CHECK(result.end_soc <= 1.0 + 1e-12);
  }
}

TEST_CASE("sweep is the config-major cartesian product") {
  const std::vector<SystemConfig> configs = {house_config(), house_config()};
  const std::vector<ScenarioProfile> profiles = {
      clear_sky_day(4.0, 400.0, 600.0), clear_sky_day(8.0, 800.0, 600.0),
      clear_sky_day(10.0, 600.0, 600.0)};
  const auto results = run_sweep(configs, profiles);
  REQUIRE(results.size() == 6);
  // same profile order repeats within each config block
  for (int c = 0; c < 2; ++c)
    for (int p = 0; p < 3; ++p)
      CHECK(results[c * 3 + p].trace.size() == profiles[p].samples.size());
  CHECK(results[0].totals.harvested_wh == results[3].totals.harvested_wh);
}

TEST_CASE("trace, summary, and daq exports have the pinned shapes") {
  TempDir dir;
  const auto result = run(house_config(), clear_sky_day(4.0, 500.0, 600.0));

  SUBCASE("trace csv header and row count") {
    const auto path = dir.path / "trace.csv";
    write_trace_csv(result, path);
    const auto text = read_file(path);
    CHECK(text.rfind("t_s,g_wm2,temp_c,p_mpp_w,mode,f_sw_hz,eta,p_served_w,"
                     "p_shed_w,p_curtail_w,soc,batt_v,p_batt_w,p_ac_w,fault\n",
                     0) == 0);
    const auto rows = std::count(text.begin(), text.end(), '\n');
    CHECK(rows == static_cast<long>(result.trace.size()) + 1);
  }
  SUBCASE("summary json carries the totals keys in order") {
    const auto path = dir.path / "summary.json";
    write_summary_json(result, path);
    const auto text = read_file(path);
    for (const char* key :
         {"harvested_wh", "delivered_wh", "charged_wh", "discharged_wh",
          "curtailed_wh", "shed_wh", "loss_wh", "peak_delivered_w", "end_soc",
          "fault_events"})
      CHECK(text.find(key) != std::string::npos);
    CHECK(text.find("harvested_wh") < text.find("delivered_wh"));
    CHECK(text.find("curtailed_wh") < text.find("shed_wh"));
  }
  SUBCASE("daq csv header") {
    const auto path = dir.path / "daq.csv";
    write_daq_csv(result, path);
    CHECK(read_file(path).rfind("t_s,pv_v,pv_i,batt_v,batt_i,load_w,mode,fault\n",
                                0) == 0);
  }
}

TEST_CASE("config validation") {
  auto cfg = house_config();
  cfg.step_s = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = house_config();
  cfg.mppt_iters_per_step = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  CHECK_NOTHROW(house_config().validate());
}
