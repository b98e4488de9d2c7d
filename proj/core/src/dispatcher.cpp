#include "shsim/dispatcher.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "shsim/errors.hpp"

namespace shsim {

double LoadItem::bus_power(const InverterSpec& inv) const {
  return kind == LoadKind::AC ? p_w / inv.eta_inv : p_w;
}

double DispatchDecision::balance_residual(double p_mpp) const {
  const double scale = std::max(
      {1.0, p_mpp, pv_to_load_w + batt_to_load_w, pv_to_batt_w + curtailed_pv_w});
  const double src = pv_to_load_w + pv_to_batt_w + conversion_loss_w + curtailed_pv_w;
  const double r1 = std::abs(p_mpp - src);
  const double r2 = std::abs((pv_to_load_w + batt_to_load_w) -
                             (served_load_w + inverter_loss_w));
  return std::max(r1, r2) / scale;
}

std::pair<DispatchDecision, BatteryState> dispatch_step(
    double p_mpp, double conv_eta, std::span<const LoadItem> loads,
    const BatteryState& batt_state, const BatterySpec& batt_spec,
    const InverterSpec& inv_spec, ConverterMode mode, double dt_s) {
  if (p_mpp < 0.0) throw ValidationError("negative MPP power");
  if (!(conv_eta > 0.0 && conv_eta <= 1.0)) throw ValidationError("conv_eta outside (0, 1]");

  DispatchDecision d;

  if (mode == ConverterMode::Fault) {
    for (const auto& load : loads) {
      d.shed.push_back(load.name);
      d.shed_load_w += load.p_w;
    }
    return {d, batt_state};
  }

  const double available = p_mpp * conv_eta;
  d.conversion_loss_w = p_mpp - available;

  // Most important loads first; input order breaks priority ties.
  std::vector<std::size_t> order(loads.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return loads[a].priority > loads[b].priority;
  });

  // The battery sits on the bus in both regulation modes, so it backs up a
  // deficit even in PWM (otherwise the hysteresis hold around the PWM/PFM
  // boundary would shed a sliver of load at every dusk).
  const double batt_avail = max_discharge_power(batt_state, batt_spec, dt_s);
  const double budget = available + batt_avail;
  constexpr double kSlack = 1e-9;

  // Loads are indivisible. Once one does not fit, everything after it is shed
  // too, which keeps the shed set a strict priority suffix.
  double served_bus_w = 0.0;
  double served_ac_w = 0.0;
  bool shedding = false;
  for (std::size_t idx : order) {
    const auto& load = loads[idx];
    const double cost = load.bus_power(inv_spec);
    const bool ac_fits = load.kind != LoadKind::AC ||
                         served_ac_w + load.p_w <= inv_spec.p_rated_w + kSlack;
    if (!shedding && served_bus_w + cost <= budget + kSlack && ac_fits) {
      served_bus_w += cost;
      d.served_load_w += load.p_w;
      if (load.kind == LoadKind::AC) {
        served_ac_w += load.p_w;
        d.inverter_loss_w += cost - load.p_w;
      }
      d.served.push_back(load.name);
    } else {
      shedding = true;
      d.shed.push_back(load.name);
      d.shed_load_w += load.p_w;
    }
  }
  d.served_ac_w = served_ac_w;

  d.pv_to_load_w = std::min(available, served_bus_w);
  BatteryState batt = batt_state;

  const double deficit = served_bus_w - d.pv_to_load_w;
  if (deficit > 0.0) {
    auto [next, delivered] = discharge(batt, batt_spec, deficit, dt_s);
    batt = next;
    d.batt_to_load_w = delivered;
  }

  double surplus = available - d.pv_to_load_w;
  if (surplus > 0.0 && mode == ConverterMode::PWM) {
    auto [next, accepted] = charge(batt, batt_spec, surplus, dt_s);
    batt = next;
    d.pv_to_batt_w = accepted;
    surplus -= accepted;
  }
  d.curtailed_pv_w = std::max(0.0, surplus);

  return {d, batt};
}

}  // namespace shsim
