#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shsim/battery.hpp"
#include "shsim/inverter.hpp"
#include "shsim/pmic.hpp"

namespace shsim {

enum class LoadKind { DC, AC };

struct LoadItem {
  std::string name;
  LoadKind kind = LoadKind::DC;
  double p_w = 0.0;
  int priority = 0;  // lower = shed first

  /// Power the load draws at the DC bus (AC loads inflated by 1/eta_inv).
  double bus_power(const InverterSpec& inv) const;
};

/// Per-step power-flow ledger. All flows are at the DC bus except
/// inverter_loss_w which bridges bus and AC side.
struct DispatchDecision {
  double pv_to_load_w = 0.0;
  double pv_to_batt_w = 0.0;
  double batt_to_load_w = 0.0;
  double conversion_loss_w = 0.0;
  double inverter_loss_w = 0.0;
  double curtailed_pv_w = 0.0;
  double served_load_w = 0.0;  // at the load side
  double served_ac_w = 0.0;    // AC-side power of served AC loads
  double shed_load_w = 0.0;
  std::vector<std::string> served;
  std::vector<std::string> shed;

  /// Largest relative balance residual of the two ledger identities.
  double balance_residual(double p_mpp) const;
};

/// Serves loads in descending priority from converted PV power plus battery
/// backup. At the first load that does not fit, it and every remaining
/// load are shed whole, so the shed set is always a priority suffix. PWM
/// surplus charges the battery; leftovers are curtailed. Fault sheds
/// everything with zero flows.
std::pair<DispatchDecision, BatteryState> dispatch_step(
    double p_mpp, double conv_eta, std::span<const LoadItem> loads,
    const BatteryState& batt_state, const BatterySpec& batt_spec,
    const InverterSpec& inv_spec, ConverterMode mode, double dt_s);

}  // namespace shsim
