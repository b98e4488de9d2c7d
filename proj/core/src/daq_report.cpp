#include "shsim/daq_report.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "shsim/errors.hpp"
#include "shsim/io.hpp"

namespace shsim {

namespace {

ConverterMode parse_mode(const std::string& s, std::size_t row) {
  if (s == "PWM") return ConverterMode::PWM;
  if (s == "PFM") return ConverterMode::PFM;
  if (s == "Fault") return ConverterMode::Fault;
  throw ParseError("DAQ row " + std::to_string(row) + ": unknown mode '" + s + "'");
}

}  // namespace

std::vector<DaqRecord> ingest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open DAQ log: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty DAQ log: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t_s,pv_v,pv_i,batt_v,batt_i,load_w,mode,fault")
    throw ParseError("bad DAQ header, expected t_s,pv_v,pv_i,batt_v,batt_i,load_w,mode,fault");

  std::vector<DaqRecord> records;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string f[8];
    for (int i = 0; i < 8; ++i) {
      if (!std::getline(ss, f[i], ',') && i < 7)
        throw ParseError("DAQ row " + std::to_string(row) + ": missing fields");
    }
    DaqRecord r;
    try {
      r.t_s = std::stod(f[0]);
      r.pv_v = std::stod(f[1]);
      r.pv_i = std::stod(f[2]);
      r.batt_v = std::stod(f[3]);
      r.batt_i = std::stod(f[4]);
      r.load_w = std::stod(f[5]);
    } catch (const std::exception&) {
      throw ParseError("DAQ row " + std::to_string(row) + ": malformed number");
    }
    for (double v : {r.t_s, r.pv_v, r.pv_i, r.batt_v, r.batt_i, r.load_w})
      if (!std::isfinite(v))
        throw ParseError("DAQ row " + std::to_string(row) + ": non-finite value");
    r.mode = parse_mode(f[6], row);
    r.fault = f[7];
    if (!records.empty() && r.t_s <= records.back().t_s)
      throw ParseError("DAQ row " + std::to_string(row) + ": non-monotone time");
    records.push_back(std::move(r));
  }
  return records;
}

KpiReport evaluate(std::span<const DaqRecord> records, const KpiThresholds& thresholds) {
  if (records.empty()) throw ValidationError("no DAQ records to evaluate");

  KpiReport report;
  std::size_t up = 0;
  for (const auto& r : records)
    if (r.mode != ConverterMode::Fault) ++up;
  report.uptime_fraction = static_cast<double>(up) / static_cast<double>(records.size());

  // Contiguous Fault runs collapse to single events.
  for (std::size_t i = 0; i < records.size();) {
    if (records[i].mode == ConverterMode::Fault) {
      FaultSpan span;
      span.start_s = records[i].t_s;
      span.code = records[i].fault;
      std::size_t j = i;
      while (j + 1 < records.size() && records[j + 1].mode == ConverterMode::Fault) ++j;
      span.end_s = records[j].t_s;
      report.fault_events.push_back(std::move(span));
      i = j + 1;
    } else {
      ++i;
    }
  }
  report.fault_count = static_cast<int>(report.fault_events.size());

  // Nominal step = smallest gap; larger gaps are coverage holes, counted but
  // never interpolated.
  double step = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < records.size(); ++i)
    step = std::min(step, records[i].t_s - records[i - 1].t_s);
  for (std::size_t i = 1; i < records.size(); ++i) {
    const double dt = records[i].t_s - records[i - 1].t_s;
    if (dt > 1.5 * step)
      report.coverage_holes += static_cast<int>(std::lround(dt / step)) - 1;
  }

  // Trapezoid of load power per calendar day; an interval belongs to the day
  // it starts in, and intervals spanning a hole are skipped.
  constexpr double kDay = 86400.0;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const double dt = records[i].t_s - records[i - 1].t_s;
    if (dt > 1.5 * step) continue;
    const auto day = static_cast<std::size_t>(records[i - 1].t_s / kDay);
    if (report.daily_energy_wh.size() <= day) report.daily_energy_wh.resize(day + 1, 0.0);
    report.daily_energy_wh[day] +=
        0.5 * (records[i - 1].load_w + records[i].load_w) * dt / 3600.0;
  }

  report.pass = report.uptime_fraction >= thresholds.min_uptime &&
                report.fault_count <= thresholds.max_faults;
  return report;
}

void write_kpi_json(const KpiReport& report, const std::filesystem::path& path) {
  nlohmann::ordered_json j = {
      {"uptime_fraction", report.uptime_fraction},
      {"fault_count", report.fault_count},
      {"fault_events", nlohmann::ordered_json::array()},
      {"daily_energy_wh", report.daily_energy_wh},
      {"coverage_holes", report.coverage_holes},
      {"pass", report.pass},
  };
  for (const auto& e : report.fault_events)
    j["fault_events"].push_back({{"start_s", e.start_s}, {"end_s", e.end_s}, {"code", e.code}});
  atomic_write(path, j.dump(2) + "\n");
}

}  // namespace shsim
