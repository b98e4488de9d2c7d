#include "shsim/planning.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "shsim/errors.hpp"

namespace shsim {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

Cents CostCatalog::unit_price_for(const std::string& needle) const {
  const std::string n = lower(needle);
  for (const auto& item : items)
    if (lower(item.name).find(n) != std::string::npos) return item.unit_price;
  return 0;
}

Cents bill_of_materials(const CostCatalog& catalog) {
  Cents total = 0;
  for (const auto& item : catalog.items) {
    if (item.unit_price < 0 || item.quantity < 0)
      throw ValidationError("catalog prices and quantities must be >= 0");
    total += item.unit_price * item.quantity;
  }
  total += catalog.shipping;
  if (catalog.maintenance_free_years <= 0) total += catalog.maintenance_annual_fee;
  return total;
}

Cents tco(const CostCatalog& catalog, int years) {
  if (years < 1) throw ValidationError("years must be >= 1");
  const int fee_years = std::max(0, years - catalog.maintenance_free_years);
  return bill_of_materials(catalog) + catalog.maintenance_annual_fee * fee_years;
}

double cost_per_kwh(double tco_usd, double daily_kwh, int years) {
  if (!(daily_kwh > 0.0)) throw ValidationError("daily_kwh must be positive");
  if (years < 1) throw ValidationError("years must be >= 1");
  return tco_usd / (daily_kwh * 365.0 * years);
}

PnlResult pnl_projection(const PnlScenario& scenario, int years) {
  if (years < 1) throw ValidationError("years must be >= 1");
  PnlResult result;
  Cents cumulative = -scenario.initial_capital;
  for (int y = 0; y < years; ++y) {
    const long units = y < static_cast<int>(scenario.units_sold_per_year.size())
                           ? scenario.units_sold_per_year[y]
                           : 0;
    PnlYear year;
    year.revenue = scenario.unit_price * units;
    year.costs = scenario.unit_cogs * units + scenario.fixed_opex_per_year;
    cumulative += year.revenue - year.costs;
    year.cumulative = cumulative;
    result.years.push_back(year);
    if (!result.break_even_year && cumulative >= 0) result.break_even_year = y + 1;
  }
  return result;
}

SizingResult size_system(const SystemConfig& base_config, const ScenarioProfile& profile,
                         Cents panel_price, Cents battery_price, int n_panels_max,
                         int n_batteries_max) {
  if (n_panels_max < 1 || n_batteries_max < 1)
    throw ValidationError("sizing bounds must be >= 1");

  std::optional<SizingResult> best_feasible;
  std::optional<SizingResult> least_unmet;

  for (int np = 0; np <= n_panels_max; ++np) {
    for (int nb = 0; nb <= n_batteries_max; ++nb) {
      SystemConfig config = base_config;
      SizingResult cell;
      cell.n_panels = np;
      cell.n_batteries = nb;
      cell.total_cost = panel_price * np + battery_price * nb;

      if (np == 0) {
        // No array: feasible only with no load at all.
        double demand_wh = 0.0;
        for (const auto& load : config.loads)
          demand_wh += load.p_w * profile.duration_s() / 3600.0;
        cell.unmet_wh = demand_wh;
        cell.feasible = demand_wh == 0.0;
        cell.end_soc_delta = 0.0;
      } else {
        config.panel.count = np;
        config.battery.count = nb;
        const SimResult sim = run(config, profile);
        cell.unmet_wh = sim.totals.shed_wh;
        cell.end_soc_delta = sim.end_soc - config.battery.soc_init;
        cell.feasible = sim.totals.shed_wh <= 1e-9 && cell.end_soc_delta >= -1e-12;
        if (cell.feasible) cell.unmet_wh = 0.0;
      }

      if (cell.feasible) {
        const bool better =
            !best_feasible ||
            std::tuple(cell.total_cost, cell.n_panels, cell.n_batteries) <
                std::tuple(best_feasible->total_cost, best_feasible->n_panels,
                           best_feasible->n_batteries);
        if (better) best_feasible = cell;
      } else {
        const bool better =
            !least_unmet ||
            std::tuple(cell.unmet_wh, cell.total_cost, cell.n_panels, cell.n_batteries) <
                std::tuple(least_unmet->unmet_wh, least_unmet->total_cost,
                           least_unmet->n_panels, least_unmet->n_batteries);
        if (better) least_unmet = cell;
      }
    }
  }

  if (best_feasible) return *best_feasible;
  return *least_unmet;
}

}  // namespace shsim
