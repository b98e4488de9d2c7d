#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "shsim/battery.hpp"
#include "shsim/dispatcher.hpp"
#include "shsim/environment.hpp"
#include "shsim/inverter.hpp"
#include "shsim/pmic.hpp"
#include "shsim/pv_array.hpp"

namespace shsim {

struct SystemConfig {
  PanelSpec panel;
  ConverterSpec converter;
  BatterySpec battery;
  InverterSpec inverter;
  std::vector<LoadItem> loads;
  MpptState mppt_init{.target_v = 21.5, .step_v = 0.2};
  double step_s = 60.0;
  // P&O iterations per engine step. Real trackers cycle much faster than the
  // engine cadence; without this the tracker cannot follow sunrise.
  int mppt_iters_per_step = 10;

  void validate() const;
};

struct TraceRow {
  double t_s, g_wm2, temp_c, p_mpp_w;
  ConverterMode mode;
  double f_sw_hz, eta;
  double p_served_w, p_shed_w, p_curtail_w;
  double soc, batt_v, p_batt_w;  // p_batt positive = discharging
  double p_ac_w;
  std::string fault;  // empty when none
  double pv_v, pv_i;  // operating point, for DAQ export
};

struct EnergyTotals {
  double harvested_wh = 0.0;
  double delivered_wh = 0.0;
  double charged_wh = 0.0;
  double discharged_wh = 0.0;
  double curtailed_wh = 0.0;
  double shed_wh = 0.0;
  double loss_wh = 0.0;

  /// Relative residual of harvested = delivered + charged - discharged +
  /// curtailed + loss (inverter losses folded into loss).
  double conservation_residual() const;
};

struct FaultEvent {
  double t_s = 0.0;
  std::string code;
};

struct SimResult {
  std::vector<TraceRow> trace;
  EnergyTotals totals;
  double peak_delivered_w = 0.0;
  double end_soc = 0.0;
  std::vector<FaultEvent> fault_events;
};

/// Fixed-step run. Per step: environment read, soiling update, MPPT, mode
/// transition, protection, dispatch, battery update, trace append.
/// Deterministic for fixed (config, profile, seed).
SimResult run(const SystemConfig& config, const ScenarioProfile& profile,
              std::uint64_t seed = 0);

/// Cartesian product of runs in config-major order.
std::vector<SimResult> run_sweep(std::span<const SystemConfig> configs,
                                 std::span<const ScenarioProfile> profiles);

/// Trace CSV with header
/// t_s,g_wm2,temp_c,p_mpp_w,mode,f_sw_hz,eta,p_served_w,p_shed_w,p_curtail_w,soc,batt_v,p_batt_w,p_ac_w,fault
void write_trace_csv(const SimResult& result, const std::filesystem::path& path);

/// Summary JSON: the totals object plus peak/fault info.
void write_summary_json(const SimResult& result, const std::filesystem::path& path);

/// DAQ-format export: t_s,pv_v,pv_i,batt_v,batt_i,load_w,mode,fault
void write_daq_csv(const SimResult& result, const std::filesystem::path& path);

}  // namespace shsim
