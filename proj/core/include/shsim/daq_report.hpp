#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "shsim/pmic.hpp"

namespace shsim {

struct DaqRecord {
  double t_s = 0.0;
  double pv_v = 0.0;
  double pv_i = 0.0;
  double batt_v = 0.0;
  double batt_i = 0.0;
  double load_w = 0.0;
  ConverterMode mode = ConverterMode::PWM;
  std::string fault;  // empty when none
};

struct KpiThresholds {
  double min_uptime = 0.95;
  int max_faults = 3;
};

struct FaultSpan {
  double start_s = 0.0;
  double end_s = 0.0;
  std::string code;
};

struct KpiReport {
  double uptime_fraction = 0.0;
  int fault_count = 0;
  std::vector<FaultSpan> fault_events;
  std::vector<double> daily_energy_wh;  // trapezoid of load_w per calendar day
  int coverage_holes = 0;               // missing steps; neither up nor down
  bool pass = false;
};

/// CSV schema: t_s,pv_v,pv_i,batt_v,batt_i,load_w,mode,fault. Throws
/// ParseError with the row number on malformed rows or non-monotone time.
std::vector<DaqRecord> ingest(const std::filesystem::path& path);

KpiReport evaluate(std::span<const DaqRecord> records, const KpiThresholds& thresholds);

void write_kpi_json(const KpiReport& report, const std::filesystem::path& path);

}  // namespace shsim
