#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shsim/environment.hpp"
#include "shsim/sim_engine.hpp"

namespace shsim {

// Money is integer cents throughout so totals are exact.
using Cents = std::int64_t;

struct CatalogItem {
  std::string name;
  Cents unit_price = 0;
  int quantity = 0;
  int lifetime_min_y = 0;
  int lifetime_max_y = 0;
};

struct CostCatalog {
  std::vector<CatalogItem> items;
  Cents shipping = 0;
  int maintenance_free_years = 3;
  Cents maintenance_annual_fee = 2000;

  /// First item whose name contains `needle` (case-insensitive); 0 if none.
  Cents unit_price_for(const std::string& needle) const;
};

Cents bill_of_materials(const CostCatalog& catalog);

/// Bill of materials plus maintenance fees past the free period. Component
/// replacement within lifetime ranges is not modeled.
Cents tco(const CostCatalog& catalog, int years);

/// tco / (daily_kwh * 365 * years). Throws ValidationError on zero input.
double cost_per_kwh(double tco_usd, double daily_kwh, int years);

struct PnlScenario {
  Cents unit_price = 0;
  std::vector<long> units_sold_per_year;
  Cents unit_cogs = 0;
  Cents fixed_opex_per_year = 0;
  Cents initial_capital = 0;
};

struct PnlYear {
  Cents revenue = 0;
  Cents costs = 0;
  Cents cumulative = 0;
};

struct PnlResult {
  std::vector<PnlYear> years;
  std::optional<int> break_even_year;  // 1-based; first year cumulative >= 0
};

PnlResult pnl_projection(const PnlScenario& scenario, int years);

struct SizingResult {
  int n_panels = 0;
  int n_batteries = 0;
  Cents total_cost = 0;
  bool feasible = false;
  double unmet_wh = 0.0;
  double end_soc_delta = 0.0;
};

/// Exhaustive enumeration over (n_panels, n_batteries) in [0..max]^2.
/// Feasible = the simulated day sheds nothing and ends with soc >= start soc.
/// Returns the minimum-cost feasible pair (ties: fewer panels, then fewer
/// batteries), or the least-unmet pair flagged infeasible.
SizingResult size_system(const SystemConfig& base_config, const ScenarioProfile& profile,
                         Cents panel_price, Cents battery_price, int n_panels_max,
                         int n_batteries_max);

}  // namespace shsim
