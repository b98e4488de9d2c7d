// Command-line front end: binds scenario configuration files to the
// simulation, planning, and reporting library.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "shsim/config.hpp"
#include "shsim/daq_report.hpp"
#include "shsim/environment.hpp"
#include "shsim/errors.hpp"
#include "shsim/io.hpp"
#include "shsim/planning.hpp"
#include "shsim/sim_engine.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// Day-profile shorthand: clear:<hours>h:<peakG>[:cloudy:<attenuation>]
shsim::ScenarioProfile parse_day_spec(const std::string& spec, double step_s,
                                      std::uint64_t seed) {
  std::vector<std::string> parts;
  std::string tmp;
  std::istringstream ss(spec);
  while (std::getline(ss, tmp, ':')) parts.push_back(tmp);
  if (parts.size() < 3 || parts[0] != "clear" || parts[1].empty() || parts[1].back() != 'h')
    throw shsim::ValidationError("bad --day spec '" + spec +
                                 "', expected clear:<hours>h:<peakG>");
  const double hours = std::stod(parts[1].substr(0, parts[1].size() - 1));
  const double peak_g = std::stod(parts[2]);
  auto profile = shsim::clear_sky_day(hours, peak_g, step_s);
  if (parts.size() == 5 && parts[3] == "cloudy") {
    profile = shsim::cloudy_modifier(profile, std::stod(parts[4]), seed);
  } else if (parts.size() != 3) {
    throw shsim::ValidationError("bad --day spec '" + spec + "'");
  }
  return profile;
}

shsim::ScenarioProfile resolve_profile(const std::string& profile_path,
                                       const std::string& day_spec, double step_s,
                                       std::uint64_t seed) {
  if (!profile_path.empty() && !day_spec.empty())
    throw shsim::ValidationError("--profile and --day are mutually exclusive");
  if (!profile_path.empty()) return shsim::load_profile_csv(profile_path);
  if (!day_spec.empty()) return parse_day_spec(day_spec, step_s, seed);
  throw shsim::ValidationError("need --profile or --day");
}

void write_sim_outputs(const shsim::SimResult& result, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  shsim::write_trace_csv(result, out_dir / "trace.csv");
  shsim::write_summary_json(result, out_dir / "summary.json");
  shsim::write_daq_csv(result, out_dir / "daq.csv");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Off-grid solar home system simulator and planning toolchain"};
  app.require_subcommand(1);

  std::string config_path, profile_path, day_spec, out_dir, thresholds_opt, daq_input;
  std::string pf_mode = "radians";
  std::uint64_t seed = 0;
  int years = 3;
  int max_panels = 4, max_batteries = 4;
  int mppt_steps = 400;
  double mppt_g = 1000.0, mppt_temp = 25.0;
  std::vector<std::string> day_specs;

  auto add_common = [&](CLI::App* cmd, bool needs_out) {
    cmd->add_option("--config", config_path, "Scenario configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--seed", seed, "Random seed (default 0)");
    auto* out = cmd->add_option("--out", out_dir, "Output directory");
    if (needs_out) out->required();
  };

  auto* simulate = app.add_subcommand("simulate", "Run one scenario, write trace and summary");
  add_common(simulate, true);
  simulate->add_option("--profile", profile_path, "Environment profile CSV");
  simulate->add_option("--day", day_spec, "Day shorthand clear:<hours>h:<peakG>");

  auto* sweep = app.add_subcommand("sweep", "Run one config across several day profiles");
  add_common(sweep, true);
  sweep->add_option("--day", day_specs, "Day shorthand, repeatable")->required();

  auto* mppt_trace = app.add_subcommand("mppt-trace", "Log the tracker converging at fixed conditions");
  add_common(mppt_trace, true);
  mppt_trace->add_option("--g", mppt_g, "Irradiance W/m^2 (default 1000)");
  mppt_trace->add_option("--temp", mppt_temp, "Panel temperature C (default 25)");
  mppt_trace->add_option("--steps", mppt_steps, "Tracker steps (default 400)");

  auto* size = app.add_subcommand("size", "Exhaustive panel/battery sizing search");
  add_common(size, false);
  size->add_option("--profile", profile_path, "Environment profile CSV");
  size->add_option("--day", day_spec, "Day shorthand clear:<hours>h:<peakG>");
  size->add_option("--max-panels", max_panels, "Search bound (default 4)");
  size->add_option("--max-batteries", max_batteries, "Search bound (default 4)");

  auto* econ = app.add_subcommand("econ", "Bill of materials, TCO, cost/kWh, P&L");
  add_common(econ, false);
  econ->add_option("--years", years, "Horizon in years (default 3)");
  econ->add_option("--pf-mode", pf_mode, "Capacity-ratio cosine reading: radians|powerfactor")
      ->check(CLI::IsMember({"radians", "powerfactor"}));

  auto* daq = app.add_subcommand("daq-report", "KPI report from a DAQ log");
  daq->add_option("input", daq_input, "DAQ CSV log")->required()->check(CLI::ExistingFile);
  daq->add_option("--config", config_path, "Scenario configuration file")
      ->check(CLI::ExistingFile);
  daq->add_option("--thresholds", thresholds_opt, "min_uptime,max_faults (e.g. 0.95,3)");
  daq->add_option("--out", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      const auto cfg = shsim::load_config(config_path);
      const auto profile =
          resolve_profile(profile_path, day_spec, cfg.system.step_s, seed);
      const auto result = shsim::run(cfg.system, profile, seed);
      write_sim_outputs(result, out_dir);
    } else if (*sweep) {
      const auto cfg = shsim::load_config(config_path);
      for (std::size_t i = 0; i < day_specs.size(); ++i) {
        const auto profile = parse_day_spec(day_specs[i], cfg.system.step_s, seed);
        const auto result = shsim::run(cfg.system, profile, seed);
        char name[32];
        std::snprintf(name, sizeof(name), "run_%03zu", i);
        write_sim_outputs(result, fs::path(out_dir) / name);
      }
    } else if (*mppt_trace) {
      const auto cfg = shsim::load_config(config_path);
      auto model = shsim::fit_model(cfg.system.panel);
      auto state = cfg.system.mppt_init;
      const auto oracle = shsim::mpp_scan(model, mppt_g, mppt_temp, 0.001);
      std::string csv = "step,target_v,applied_v,applied_p_w,oracle_p_w\n";
      for (int s = 0; s < mppt_steps; ++s) {
        auto [next, op] = shsim::mppt_step(state, model, mppt_g, mppt_temp);
        csv += std::to_string(s) + ',' + shsim::format_double(next.target_v, 6) + ',' +
               shsim::format_double(op.v, 6) + ',' + shsim::format_double(op.p, 6) + ',' +
               shsim::format_double(oracle.p, 6) + '\n';
        state = next;
      }
      fs::create_directories(out_dir);
      shsim::atomic_write(fs::path(out_dir) / "mppt_trace.csv", csv);
    } else if (*size) {
      const auto cfg = shsim::load_config(config_path);
      const auto profile =
          resolve_profile(profile_path, day_spec, cfg.system.step_s, seed);
      const auto sizing = shsim::size_system(
          cfg.system, profile, cfg.catalog.unit_price_for("panel"),
          cfg.catalog.unit_price_for("batter"), max_panels, max_batteries);
      ordered_json j = {
          {"n_panels", sizing.n_panels},
          {"n_batteries", sizing.n_batteries},
          {"total_cost_usd", sizing.total_cost / 100.0},
          {"feasible", sizing.feasible},
          {"unmet_wh", sizing.unmet_wh},
          {"end_soc_delta", sizing.end_soc_delta},
      };
      const std::string text = j.dump(2) + "\n";
      std::cout << text;
      if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        shsim::atomic_write(fs::path(out_dir) / "sizing.json", text);
      }
    } else if (*econ) {
      const auto cfg = shsim::load_config(config_path);
      const auto bom = shsim::bill_of_materials(cfg.catalog);
      const auto total = shsim::tco(cfg.catalog, years);
      const auto pnl = shsim::pnl_projection(cfg.pnl, years);
      const auto mode = pf_mode == "radians" ? shsim::PfMode::Radians
                                             : shsim::PfMode::PowerFactor;
      const auto cmp = shsim::AcDcComparison::from_ac(230.0, 10.0);
      ordered_json j = {
          {"bom_usd", bom / 100.0},
          {"tco_usd", total / 100.0},
          {"cost_per_kwh", shsim::cost_per_kwh(total / 100.0, cfg.daily_kwh, years)},
          {"dc_capacity_ratio", shsim::dc_capacity_ratio(cmp, mode)},
          {"pnl", {{"years", ordered_json::array()}}},
      };
      for (const auto& y : pnl.years)
        j["pnl"]["years"].push_back({{"revenue_usd", y.revenue / 100.0},
                                     {"costs_usd", y.costs / 100.0},
                                     {"cumulative_usd", y.cumulative / 100.0}});
      if (pnl.break_even_year)
        j["pnl"]["break_even_year"] = *pnl.break_even_year;
      else
        j["pnl"]["break_even_year"] = nullptr;
      const std::string text = j.dump(2) + "\n";
      std::cout << text;
      if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        shsim::atomic_write(fs::path(out_dir) / "econ.json", text);
      }
    } else if (*daq) {
      shsim::KpiThresholds thresholds;
      if (!config_path.empty()) thresholds = shsim::load_config(config_path).daq_thresholds;
      if (!thresholds_opt.empty()) {
        const auto comma = thresholds_opt.find(',');
        if (comma == std::string::npos)
          throw shsim::ValidationError("--thresholds expects min_uptime,max_faults");
        thresholds.min_uptime = std::stod(thresholds_opt.substr(0, comma));
        thresholds.max_faults = std::stoi(thresholds_opt.substr(comma + 1));
      }
      const auto records = shsim::ingest(daq_input);
      const auto report = shsim::evaluate(records, thresholds);
      ordered_json j = {
          {"uptime_fraction", report.uptime_fraction},
          {"fault_count", report.fault_count},
          {"daily_energy_wh", report.daily_energy_wh},
          {"coverage_holes", report.coverage_holes},
          {"pass", report.pass},
      };
      std::cout << j.dump(2) << "\n";
      if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        shsim::write_kpi_json(report, fs::path(out_dir) / "kpi_report.json");
      }
      if (!report.pass) return 2;
    }
  } catch (const shsim::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const shsim::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
