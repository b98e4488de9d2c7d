#include "shsim/battery.hpp"

#include <algorithm>
#include <cmath>

#include "shsim/errors.hpp"

namespace shsim {

void BatterySpec::validate() const {
  if (count < 0) throw ValidationError("battery count must be >= 0");
  if (!(soc_min >= 0.0 && soc_min < soc_init && soc_init <= 1.0))
    throw ValidationError("need 0 <= soc_min < soc_init <= 1");
  if (!(eta_charge > 0.0 && eta_charge <= 1.0 && eta_discharge > 0.0 && eta_discharge <= 1.0))
    throw ValidationError("efficiencies outside (0, 1]");
  const double unit_wh = energy_kwh * 1000.0;
  if (std::abs(capacity_ah * v_nominal - unit_wh) / unit_wh > 0.01)
    throw ValidationError("capacity_ah * v_nominal inconsistent with energy_kwh by >1%");
  if (!(max_charge_w >= 0.0 && max_discharge_w >= 0.0))
    throw ValidationError("power limits must be >= 0");
}

double max_charge_power(const BatteryState& state, const BatterySpec& spec, double dt_s) {
  if (spec.count == 0) return 0.0;
  const double headroom_wh = (1.0 - state.soc) * spec.energy_wh_total();
  const double fill_w = headroom_wh / spec.eta_charge * 3600.0 / dt_s;
  return std::max(0.0, std::min(spec.max_charge_w * spec.count, fill_w));
}

double max_discharge_power(const BatteryState& state, const BatterySpec& spec, double dt_s) {
  if (spec.count == 0) return 0.0;
  const double avail_wh = (state.soc - spec.soc_min) * spec.energy_wh_total();
  const double drain_w = avail_wh * spec.eta_discharge * 3600.0 / dt_s;
  return std::max(0.0, std::min(spec.max_discharge_w * spec.count, drain_w));
}

std::pair<BatteryState, double> charge(const BatteryState& state, const BatterySpec& spec,
                                       double p_offered_w, double dt_s) {
  if (p_offered_w < 0.0) throw ValidationError("negative charge power");
  if (!(dt_s > 0.0)) throw ValidationError("dt must be positive");
  const double p_accepted = std::min(p_offered_w, max_charge_power(state, spec, dt_s));
  BatteryState next = state;
  if (p_accepted > 0.0) {
    next.soc += p_accepted * spec.eta_charge * dt_s / (3600.0 * spec.energy_wh_total());
    next.soc = std::min(next.soc, 1.0);
    next.throughput_wh += p_accepted * dt_s / 3600.0;
  }
  return {next, p_accepted};
}

std::pair<BatteryState, double> discharge(const BatteryState& state, const BatterySpec& spec,
                                          double p_requested_w, double dt_s) {
  if (p_requested_w < 0.0) throw ValidationError("negative discharge power");
  if (!(dt_s > 0.0)) throw ValidationError("dt must be positive");
  const double p_delivered = std::min(p_requested_w, max_discharge_power(state, spec, dt_s));
  BatteryState next = state;
  if (p_delivered > 0.0) {
    next.soc -= (p_delivered / spec.eta_discharge) * dt_s / (3600.0 * spec.energy_wh_total());
    next.soc = std::max(next.soc, spec.soc_min);
    next.throughput_wh += p_delivered * dt_s / 3600.0;
  }
  return {next, p_delivered};
}

double terminal_voltage(const BatteryState& state, const BatterySpec& spec) {
  constexpr double kFloorV = 11.8, kCeilV = 12.9;  // per 12 V unit
  return (kFloorV + (kCeilV - kFloorV) * state.soc) * (spec.v_nominal / 12.0);
}

}  // namespace shsim
