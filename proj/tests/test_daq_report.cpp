#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "shsim/daq_report.hpp"
#include "shsim/errors.hpp"

using namespace shsim;
namespace fs = std::filesystem;

namespace {

const char* kHeader = "t_s,pv_v,pv_i,batt_v,batt_i,load_w,mode,fault\n";

fs::path write_log(const std::string& body, const std::string& name) {
  const auto path = fs::temp_directory_path() / name;
  std::ofstream out(path);
  out << kHeader << body;
  return path;
}

std::vector<DaqRecord> synthetic(int n, double step_s, int fault_from = -1,
                                 int fault_to = -1) {
  std::vector<DaqRecord> records;
  for (int i = 0; i < n; ++i) {
    DaqRecord r;
    r.t_s = i * step_s;
    r.pv_v = 35.0;
    r.pv_i = 8.0;
    r.batt_v = 12.5;
    r.batt_i = 1.0;
    r.load_w = 100.0;
    if (i >= fault_from && i < fault_to) {
      r.mode = ConverterMode::Fault;
      r.fault = "OVP";
      r.load_w = 0.0;
    }
    records.push_back(r);
  }
  return records;
}

}  // namespace

TEST_CASE("ingest round-trips a well-formed log") {
  const auto path = write_log(
      "0,35.1,8.2,12.5,1.0,170,PWM,\n"
      "60,35.0,8.1,12.5,0.9,170,PWM,\n"
      "120,0,0,12.4,-2.0,100,PFM,\n"
      "180,0,0,11.9,0,0,Fault,OVP\n",
      "daq_ok.csv");
  const auto records = ingest(path);
  REQUIRE(records.size() == 4);
  CHECK(records[0].t_s == 0.0);
  CHECK(records[0].load_w == 170.0);
  CHECK(records[2].mode == ConverterMode::PFM);
  CHECK(records[2].batt_i == -2.0);
  CHECK(records[3].mode == ConverterMode::Fault);
  CHECK(records[3].fault == "OVP");
  fs::remove(path);
}

TEST_CASE("ingest rejects malformed input with the row number") {
  SUBCASE("bad header") {
    const auto path = fs::temp_directory_path() / "daq_hdr.csv";
    std::ofstream(path) << "time,volts\n1,2\n";
    CHECK_THROWS_AS(ingest(path), ParseError);
    fs::remove(path);
  }
  SUBCASE("malformed number names row 3") {
    const auto path = write_log("0,1,1,12,0,10,PWM,\nsixty,1,1,12,0,10,PWM,\n",
                                "daq_num.csv");
    CHECK_THROWS_WITH_AS(ingest(path), doctest::Contains("row 3"), ParseError);
    fs::remove(path);
  }
  SUBCASE("unknown mode") {
    const auto path = write_log("0,1,1,12,0,10,TURBO,\n", "daq_mode.csv");
    CHECK_THROWS_AS(ingest(path), ParseError);
    fs::remove(path);
  }
  SUBCASE("missing fields") {
    const auto path = write_log("0,1,1\n", "daq_short.csv");
    CHECK_THROWS_AS(ingest(path), ParseError);
    fs::remove(path);
  }
  SUBCASE("non-monotone time") {
    const auto path = write_log("60,1,1,12,0,10,PWM,\n60,1,1,12,0,10,PWM,\n",
                                "daq_time.csv");
    CHECK_THROWS_WITH_AS(ingest(path), doctest::Contains("non-monotone"), ParseError);
    fs::remove(path);
  }
}

TEST_CASE("uptime and fault events") {
  SUBCASE("clean log has full uptime and passes") {
    const auto records = synthetic(100, 60.0);
    const auto report = evaluate(records, KpiThresholds{});
    CHECK(report.uptime_fraction == 1.0);
    CHECK(report.fault_count == 0);
    CHECK(report.coverage_holes == 0);
    CHECK(report.pass);
  }
  SUBCASE("a contiguous fault run is one event") {
    const auto records = synthetic(100, 60.0, 40, 50);
    const auto report = evaluate(records, KpiThresholds{});
    CHECK(report.uptime_fraction == doctest::Approx(0.90).epsilon(1e-12));
    REQUIRE(report.fault_count == 1);
    CHECK(report.fault_events[0].start_s == doctest::Approx(40 * 60.0));
    CHECK(report.fault_events[0].end_s == doctest::Approx(49 * 60.0));
    CHECK(report.fault_events[0].code == "OVP");
    CHECK(!report.pass);  // uptime below 0.95
  }
  SUBCASE("four separated faults fail the count threshold") {
    auto records = synthetic(1000, 60.0);
    for (int i : {100, 300, 500, 700}) {
      records[i].mode = ConverterMode::Fault;
      records[i].fault = "OTP";
    }
    const auto report = evaluate(records, KpiThresholds{});
    CHECK(report.fault_count == 4);
    CHECK(report.uptime_fraction >= 0.95);
    CHECK(!report.pass);
  }
  SUBCASE("empty input throws") {
    const std::vector<DaqRecord> empty;
    CHECK_THROWS_AS(evaluate(empty, KpiThresholds{}), ValidationError);
  }
}

TEST_CASE("coverage holes are counted, not interpolated") {
  auto records = synthetic(100, 60.0);
  // drop ten samples: the 600 s gap is nine missing steps
  records.erase(records.begin() + 50, records.begin() + 59);
  const auto report = evaluate(records, KpiThresholds{});
  CHECK(report.coverage_holes == 9);
  CHECK(report.uptime_fraction == 1.0);  // holes are neither up nor down
}

TEST_CASE("daily energy is the per-calendar-day trapezoid") {
  SUBCASE("constant 100 W for 48 h gives 2.4 kWh per day") {
    const auto records = synthetic(2 * 1440 + 1, 60.0);
    const auto report = evaluate(records, KpiThresholds{});
    REQUIRE(report.daily_energy_wh.size() == 2);
    CHECK(report.daily_energy_wh[0] == doctest::Approx(2400.0).epsilon(1e-9));
    CHECK(report.daily_energy_wh[1] == doctest::Approx(2400.0).epsilon(1e-9));
  }
  SUBCASE("intervals spanning a hole contribute nothing") {
    auto records = synthetic(100, 60.0);
    records.erase(records.begin() + 10, records.begin() + 20);
    const auto report = evaluate(records, KpiThresholds{});
    // 90 records leave 89 intervals, one of which spans the hole
    CHECK(report.daily_energy_wh[0] == doctest::Approx(88 * 100.0 / 60.0).epsilon(1e-9));
  }
}

TEST_CASE("kpi json carries the expected keys") {
  const auto records = synthetic(10, 60.0, 2, 4);
  const auto report = evaluate(records, KpiThresholds{});
  const auto path = fs::temp_directory_path() / "kpi.json";
  write_kpi_json(report, path);
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  for (const char* key : {"uptime_fraction", "fault_count", "fault_events",
                          "daily_energy_wh", "coverage_holes", "pass"})
    CHECK(text.find(key) != std::string::npos);
  CHECK(text.find("OVP") != std::string::npos);
  fs::remove(path);
}
