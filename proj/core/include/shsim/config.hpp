#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "shsim/daq_report.hpp"
#include "shsim/planning.hpp"
#include "shsim/sim_engine.hpp"

namespace shsim {

/// Everything a scenario configuration file can describe. Every field starts
/// at the documented defaults; the file overrides selectively.
struct ScenarioConfig {
  SystemConfig system;
  CostCatalog catalog;
  PnlScenario pnl;
  KpiThresholds daq_thresholds;
  double daily_kwh = 2.4;  // reference consumption for cost-per-kWh
};

/// Sectioned key-value text file, INI-like:
///   [section]
///   key = value        # comment
/// Repeated `load =` / `item =` keys append. Throws ParseError with the
/// offending line number.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Parsed but unmapped representation, exposed for tests.
std::map<std::string, std::vector<std::pair<std::string, std::string>>>
parse_sections(const std::filesystem::path& path);

}  // namespace shsim
