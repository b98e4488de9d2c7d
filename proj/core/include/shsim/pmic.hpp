#pragma once

#include <optional>
#include <utility>

#include "shsim/pv_array.hpp"

namespace shsim {

enum class ConverterMode { PWM, PFM, Fault };
enum class FaultCode { OVP, OTP };

const char* to_string(ConverterMode mode);
const char* to_string(FaultCode code);

struct ConverterSpec {
  double f_nominal_hz = 30e6;
  double v_in_nominal = 36.0;
  double v_out_nominal = 48.0;
  double eta_min = 0.70;
  double eta_max = 0.85;
  double i_load_lo_a = 0.5;   // low-load efficiency anchor
  double i_load_hi_a = 12.5;  // full-load efficiency anchor
  double c_out_f = 1.872e-6;
  double ovp_threshold_v = 55.2;  // 1.15 * v_out_nominal default
  double otp_threshold_c = 85.0;
  double temp_derate_per_c = 0.0;
  double hysteresis = 0.05;  // fraction of p_demand
  int min_dwell_steps = 5;

  void validate() const;
};

struct ConverterState {
  ConverterMode mode = ConverterMode::PWM;
  double f_sw_hz = 30e6;
  double duty = 0.5;
  double v_in = 0.0;
  double v_out = 0.0;
  double p_in = 0.0;
  double p_out = 0.0;
  double efficiency = 0.0;
  std::optional<FaultCode> fault;
  int steps_in_mode = 5;  // >= default dwell so a fresh converter may switch
};

/// Perturb-and-observe tracker state (voltage-domain realization).
struct MpptState {
  double target_v = 0.0;
  double step_v = 0.2;
  double last_power = 0.0;
  int direction = 1;  // +1 or -1
};

/// Averaged boost conversion: v_in / (1 - duty).
double ideal_boost_ratio(double v_in, double duty);

/// Output ripple estimate: i_load * duty / (f_sw * c_out).
double output_ripple(double i_load, double duty, double f_sw, double c_out);

/// Piecewise-linear efficiency from eta_min (load_fraction 0, the i_load_lo
/// anchor) to eta_max (1, the i_load_hi anchor), derated above 25 degC and
/// clamped to [0.01, eta_max].
double efficiency_at(const ConverterSpec& spec, double load_fraction, double temp_c);

/// One P&O iteration: evaluate power at target_v, reverse on a power drop,
/// step and clamp to [0, Voc(g,temp)]. Returns the updated tracker and the
/// operating point applied this step.
std::pair<MpptState, PvOperatingPoint> mppt_step(const MpptState& state,
                                                 const PvModel& model, double g,
                                                 double temp_c);

/// Equivalent switching frequency reported for the trace log.
double equivalent_switching_freq(const ConverterSpec& spec, double target_v);

/// PWM when MPP power covers demand, PFM when it falls below the hysteresis
/// band; transitions respect the minimum dwell. Caller must not pass a
/// faulted state.
ConverterState mode_transition(ConverterState state, double p_mpp, double p_demand,
                               double soc, double soc_full,
                               const ConverterSpec& spec);

/// OVP/OTP latching check: a crossed threshold forces Fault and zero output
/// until reset_fault.
ConverterState protection_check(ConverterState state, const ConverterSpec& spec,
                                double temp_c);

ConverterState reset_fault(ConverterState state);

}  // namespace shsim
