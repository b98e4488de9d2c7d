#pragma once

#include <utility>

namespace shsim {

/// VRLA bank: `count` identical parallel units.
struct BatterySpec {
  double capacity_ah = 200.0;
  double v_nominal = 12.0;
  double energy_kwh = 2.4;
  int count = 1;
  double soc_min = 0.5;
  double soc_init = 0.9;
  double eta_charge = 0.90;
  double eta_discharge = 0.90;
  double max_charge_w = 480.0;     // per unit (0.2C)
  double max_discharge_w = 480.0;  // per unit

  void validate() const;
  double energy_wh_total() const { return energy_kwh * 1000.0 * count; }
};

struct BatteryState {
  double soc = 0.9;
  double throughput_wh = 0.0;  // lifetime cumulative absolute energy at the bus
};

/// Largest charge power the bank can absorb for dt_s seconds.
double max_charge_power(const BatteryState& state, const BatterySpec& spec, double dt_s);

/// Largest discharge power the bank can sustain for dt_s seconds without
/// crossing soc_min, net of discharge efficiency.
double max_discharge_power(const BatteryState& state, const BatterySpec& spec, double dt_s);

/// Coulomb-counting charge step; returns (new state, power actually accepted).
std::pair<BatteryState, double> charge(const BatteryState& state, const BatterySpec& spec,
                                       double p_offered_w, double dt_s);

/// Discharge step; returns (new state, power actually delivered). An empty
/// bank delivers 0; the shortfall is the dispatcher's problem.
std::pair<BatteryState, double> discharge(const BatteryState& state, const BatterySpec& spec,
                                          double p_requested_w, double dt_s);

/// Linear open-circuit approximation between 11.8 V and 12.9 V per 12 V unit.
double terminal_voltage(const BatteryState& state, const BatterySpec& spec);

}  // namespace shsim
