#include "shsim/pmic.hpp"

#include <algorithm>
#include <cmath>

#include "shsim/errors.hpp"

namespace shsim {

const char* to_string(ConverterMode mode) {
  switch (mode) {
    case ConverterMode::PWM: return "PWM";
    case ConverterMode::PFM: return "PFM";
    case ConverterMode::Fault: return "Fault";
  }
  return "?";
}

const char* to_string(FaultCode code) {
  switch (code) {
    case FaultCode::OVP: return "OVP";
    case FaultCode::OTP: return "OTP";
  }
  return "?";
}

void ConverterSpec::validate() const {
  if (!(eta_min <= eta_max)) throw ValidationError("eta_min > eta_max");
  if (!(eta_min > 0.0 && eta_max <= 1.0)) throw ValidationError("efficiency outside (0, 1]");
  if (!(i_load_lo_a < i_load_hi_a)) throw ValidationError("load anchors inverted");
  if (!(ovp_threshold_v > 0.0 && otp_threshold_c > 0.0))
    throw ValidationError("protection thresholds must be positive");
  if (!(f_nominal_hz > 0.0 && c_out_f > 0.0))
    throw ValidationError("f_nominal and c_out must be positive");
}

double ideal_boost_ratio(double v_in, double duty) {
  if (!(duty >= 0.0 && duty <= 0.95)) throw ValidationError("duty outside [0, 0.95]");
  return v_in / (1.0 - duty);
}

double output_ripple(double i_load, double duty, double f_sw, double c_out) {
  if (!(f_sw > 0.0 && c_out > 0.0)) throw ValidationError("f_sw and c_out must be positive");
  if (i_load < 0.0 || duty < 0.0) throw ValidationError("negative i_load or duty");
  return i_load * duty / (f_sw * c_out);
}

double efficiency_at(const ConverterSpec& spec, double load_fraction, double temp_c) {
  if (!(load_fraction >= 0.0 && load_fraction <= 1.0))
    throw ValidationError("load_fraction outside [0, 1]");
  double eta = spec.eta_min + (spec.eta_max - spec.eta_min) * load_fraction;
  eta *= std::max(0.0, 1.0 - spec.temp_derate_per_c * std::max(0.0, temp_c - 25.0));
  return std::clamp(eta, 0.01, spec.eta_max);
}

std::pair<MpptState, PvOperatingPoint> mppt_step(const MpptState& state,
                                                 const PvModel& model, double g,
                                                 double temp_c) {
  const double voc = open_circuit_voltage(model, g, temp_c);
  const double v = std::clamp(state.target_v, 0.0, voc);
  const auto op = iv_at(model, v, g, temp_c);

  MpptState next = state;
  if (op.p < state.last_power) next.direction = -next.direction;
  next.target_v = std::clamp(v + next.direction * state.step_v, 0.0, voc);
  next.last_power = op.p;
  return {next, op};
}

double equivalent_switching_freq(const ConverterSpec& spec, double target_v) {
  if (target_v <= 0.0) return spec.f_nominal_hz;
  return spec.f_nominal_hz * (spec.v_in_nominal / target_v);
}

ConverterState mode_transition(ConverterState state, double p_mpp, double p_demand,
                               double soc, double soc_full, const ConverterSpec& spec) {
  (void)soc;
  (void)soc_full;  // charging vs full is the dispatcher's call; mode only
                   // encodes surplus/deficit
  if (state.mode == ConverterMode::Fault) return state;

  ConverterMode desired = state.mode;
  if (p_mpp >= p_demand) {
    desired = ConverterMode::PWM;
  } else if (p_mpp < p_demand * (1.0 - spec.hysteresis)) {
    desired = ConverterMode::PFM;
  }  // inside the hysteresis band: hold

  if (desired != state.mode && state.steps_in_mode >= spec.min_dwell_steps) {
    state.mode = desired;
    state.steps_in_mode = 0;
  } else {
    ++state.steps_in_mode;
  }
  return state;
}

ConverterState protection_check(ConverterState state, const ConverterSpec& spec,
                                double temp_c) {
  if (state.mode == ConverterMode::Fault) return state;  // latched
  if (state.v_out > spec.ovp_threshold_v) {
    state.mode = ConverterMode::Fault;
    state.fault = FaultCode::OVP;
    state.p_out = 0.0;
    state.efficiency = 0.0;
  } else if (temp_c > spec.otp_threshold_c) {
    state.mode = ConverterMode::Fault;
    state.fault = FaultCode::OTP;
    state.p_out = 0.0;
    state.efficiency = 0.0;
  }
  return state;
}

ConverterState reset_fault(ConverterState state) {
  if (state.mode == ConverterMode::Fault) {
    state.mode = ConverterMode::PWM;
    state.fault.reset();
    state.steps_in_mode = 0;
  }
  return state;
}

}  // namespace shsim
