#include "shsim/sim_engine.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "shsim/errors.hpp"
#include "shsim/io.hpp"

namespace shsim {

void SystemConfig::validate() const {
  panel.validate();
  converter.validate();
  battery.validate();
  inverter.validate();
  if (!(step_s >= 1.0 && step_s <= 3600.0)) throw ValidationError("step_s outside [1, 3600]");
  for (const auto& load : loads)
    if (load.p_w < 0.0) throw ValidationError("load power must be >= 0: " + load.name);
  if (!(mppt_init.step_v > 0.0)) throw ValidationError("mppt step_v must be positive");
  if (mppt_iters_per_step < 1) throw ValidationError("mppt_iters_per_step must be >= 1");
}

double EnergyTotals::conservation_residual() const {
  const double lhs = harvested_wh;
  const double rhs = delivered_wh + charged_wh - discharged_wh + curtailed_wh + loss_wh;
  const double scale = std::max(1.0, std::abs(lhs));
  return std::abs(lhs - rhs) / scale;
}

SimResult run(const SystemConfig& config, const ScenarioProfile& profile,
              std::uint64_t seed) {
  (void)seed;  // runs are already deterministic; profiles carry any randomness
  config.validate();
  profile.validate();

  PvModel model = fit_model(config.panel);
  MpptState mppt = config.mppt_init;
  BatteryState batt{.soc = config.battery.soc_init, .throughput_wh = 0.0};
  ConverterState conv;
  conv.steps_in_mode = config.converter.min_dwell_steps;
  conv.f_sw_hz = config.converter.f_nominal_hz;

  const double dt_s = profile.step_s;
  const double dt_h = dt_s / 3600.0;

  SimResult result;
  result.trace.reserve(profile.samples.size());
  std::string last_fault;  // contiguous identical faults collapse to one event

  double p_demand = 0.0;
  for (const auto& load : config.loads) p_demand += load.bus_power(config.inverter);

  for (const auto& env : profile.samples) {
    model = apply_soiling_step(model, dt_s, env.rain);

    // Panel temperature is taken as ambient (no thermal model).
    std::string fault;
    PvOperatingPoint op{};
    const bool panel_ok =
        env.ambient_temp_c >= config.panel.temp_min_c &&
        env.ambient_temp_c <= config.panel.temp_max_c;
    if (panel_ok) {
      for (int k = 0; k < config.mppt_iters_per_step; ++k)
        std::tie(mppt, op) = mppt_step(mppt, model, env.irradiance_g, env.ambient_temp_c);
    } else {
      fault = "PANEL_TEMP";
    }
    const double p_mpp = op.p;

    // A panel-window fault idles the whole chain for the step; the converter
    // sees no input then and its own protection is not consulted.
    if (panel_ok) {
      if (conv.mode != ConverterMode::Fault) {
        conv = mode_transition(conv, p_mpp, p_demand, batt.soc, 1.0, config.converter);
        conv.v_in = op.v;
        conv.duty = std::clamp(1.0 - op.v / config.converter.v_out_nominal, 0.0, 0.95);
        conv.v_out = op.v > 0.0 ? ideal_boost_ratio(op.v, conv.duty)
                                : config.converter.v_out_nominal;
        conv.f_sw_hz = equivalent_switching_freq(config.converter, mppt.target_v);
      }
      conv = protection_check(conv, config.converter, env.ambient_temp_c);
      if (conv.mode == ConverterMode::Fault && conv.fault) fault = to_string(*conv.fault);
    }

    const double i_load = p_demand / config.converter.v_out_nominal;
    const double load_fraction =
        std::clamp((i_load - config.converter.i_load_lo_a) /
                       (config.converter.i_load_hi_a - config.converter.i_load_lo_a),
                   0.0, 1.0);
    const double eta = efficiency_at(config.converter, load_fraction, env.ambient_temp_c);

    const double p_harv = fault.empty() ? p_mpp : 0.0;
    const auto mode_for_dispatch =
        fault.empty() ? conv.mode : ConverterMode::Fault;
    auto [decision, batt_next] =
        dispatch_step(p_harv, eta, config.loads, batt, config.battery, config.inverter,
                      mode_for_dispatch, dt_s);

    conv.p_in = p_harv;
    conv.p_out = p_harv * (conv.mode == ConverterMode::Fault ? 0.0 : eta);
    conv.efficiency = conv.p_in > 0.0 ? conv.p_out / conv.p_in : 0.0;

    result.totals.harvested_wh += p_harv * dt_h;
    result.totals.delivered_wh += decision.served_load_w * dt_h;
    result.totals.charged_wh += decision.pv_to_batt_w * dt_h;
    result.totals.discharged_wh += decision.batt_to_load_w * dt_h;
    result.totals.curtailed_wh += decision.curtailed_pv_w * dt_h;
    result.totals.shed_wh += decision.shed_load_w * dt_h;
    result.totals.loss_wh +=
        (decision.conversion_loss_w + decision.inverter_loss_w) * dt_h;
    result.peak_delivered_w = std::max(result.peak_delivered_w, decision.served_load_w);

    if (!fault.empty() && fault != last_fault)
      result.fault_events.push_back({env.t_s, fault});
    last_fault = fault;

    const double p_batt = decision.batt_to_load_w - decision.pv_to_batt_w;
    result.trace.push_back({
        .t_s = env.t_s,
        .g_wm2 = env.irradiance_g,
        .temp_c = env.ambient_temp_c,
        .p_mpp_w = p_harv,
        .mode = fault.empty() ? conv.mode : ConverterMode::Fault,
        .f_sw_hz = conv.f_sw_hz,
        .eta = eta,
        .p_served_w = decision.served_load_w,
        .p_shed_w = decision.shed_load_w,
        .p_curtail_w = decision.curtailed_pv_w,
        .soc = batt_next.soc,
        .batt_v = terminal_voltage(batt_next, config.battery),
        .p_batt_w = p_batt,
        .p_ac_w = decision.served_ac_w,
        .fault = fault,
        .pv_v = op.v,
        .pv_i = op.i,
    });
    batt = batt_next;
  }
  result.end_soc = batt.soc;
  return result;
}

std::vector<SimResult> run_sweep(std::span<const SystemConfig> configs,
                                 std::span<const ScenarioProfile> profiles) {
  if (configs.empty() || profiles.empty())
    throw ValidationError("run_sweep needs at least one config and one profile");
  std::vector<SimResult> results;
  results.reserve(configs.size() * profiles.size());
  for (const auto& config : configs)
    for (const auto& profile : profiles) results.push_back(run(config, profile));
  return results;
}

void write_trace_csv(const SimResult& result, const std::filesystem::path& path) {
  std::string out =
      "t_s,g_wm2,temp_c,p_mpp_w,mode,f_sw_hz,eta,p_served_w,p_shed_w,p_curtail_w,"
      "soc,batt_v,p_batt_w,p_ac_w,fault\n";
  for (const auto& r : result.trace) {
    out += format_double(r.t_s, 3) + ',' + format_double(r.g_wm2, 4) + ',' +
           format_double(r.temp_c, 3) + ',' + format_double(r.p_mpp_w, 6) + ',' +
           to_string(r.mode) + ',' + format_double(r.f_sw_hz, 1) + ',' +
           format_double(r.eta, 6) + ',' + format_double(r.p_served_w, 6) + ',' +
           format_double(r.p_shed_w, 6) + ',' + format_double(r.p_curtail_w, 6) + ',' +
           format_double(r.soc, 9) + ',' + format_double(r.batt_v, 6) + ',' +
           format_double(r.p_batt_w, 6) + ',' + format_double(r.p_ac_w, 6) + ',' +
           r.fault + '\n';
  }
  atomic_write(path, out);
}

void write_summary_json(const SimResult& result, const std::filesystem::path& path) {
  nlohmann::ordered_json totals = {
      {"harvested_wh", result.totals.harvested_wh},
      {"delivered_wh", result.totals.delivered_wh},
      {"charged_wh", result.totals.charged_wh},
      {"discharged_wh", result.totals.discharged_wh},
      {"curtailed_wh", result.totals.curtailed_wh},
      {"shed_wh", result.totals.shed_wh},
      {"loss_wh", result.totals.loss_wh},
  };
  nlohmann::ordered_json j = {
      {"totals", totals},
      {"peak_delivered_w", result.peak_delivered_w},
      {"end_soc", result.end_soc},
      {"fault_events", nlohmann::ordered_json::array()},
  };
  for (const auto& e : result.fault_events)
    j["fault_events"].push_back({{"t_s", e.t_s}, {"code", e.code}});
  atomic_write(path, j.dump(2) + "\n");
}

void write_daq_csv(const SimResult& result, const std::filesystem::path& path) {
  std::string out = "t_s,pv_v,pv_i,batt_v,batt_i,load_w,mode,fault\n";
  for (const auto& r : result.trace) {
    const double batt_i = r.batt_v > 0.0 ? r.p_batt_w / r.batt_v : 0.0;
    out += format_double(r.t_s, 3) + ',' + format_double(r.pv_v, 6) + ',' +
           format_double(r.pv_i, 6) + ',' + format_double(r.batt_v, 6) + ',' +
           format_double(batt_i, 6) + ',' + format_double(r.p_served_w, 6) + ',' +
           to_string(r.mode) + ',' + r.fault + '\n';
  }
  atomic_write(path, out);
}

}  // namespace shsim
