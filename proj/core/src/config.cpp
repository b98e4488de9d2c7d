#include "shsim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "shsim/errors.hpp"

namespace shsim {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string field;
  while (std::getline(ss, field, sep)) out.push_back(trim(field));
  return out;
}

double to_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError("config line " + std::to_string(line) + ": bad number '" + v + "'");
  }
}

int to_int(const std::string& v, int line) {
  const double d = to_double(v, line);
  if (d != std::floor(d))
    throw ParseError("config line " + std::to_string(line) + ": expected integer '" + v + "'");
  return static_cast<int>(d);
}

Cents to_cents(const std::string& v, int line) {
  return static_cast<Cents>(std::llround(to_double(v, line) * 100.0));
}

}  // namespace

std::map<std::string, std::vector<std::pair<std::string, std::string>>>
parse_sections(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config: " + path.string());
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;
  std::string section;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("config line " + std::to_string(n) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      sections.try_emplace(section);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(n) + ": expected key = value");
    sections[section].emplace_back(trim(line.substr(0, eq)) + '\n' + std::to_string(n),
                                   trim(line.substr(eq + 1)));
  }
  return sections;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  const auto sections = parse_sections(path);
  ScenarioConfig cfg;
  cfg.system.battery.count = 2;
  cfg.system.panel.count = 2;

  for (const auto& [section, entries] : sections) {
    for (const auto& [key_line, value] : entries) {
      const auto nl = key_line.find('\n');
      const std::string key = key_line.substr(0, nl);
      const int line = std::stoi(key_line.substr(nl + 1));
      auto num = [&] { return to_double(value, line); };
      auto integer = [&] { return to_int(value, line); };
      auto cents = [&] { return to_cents(value, line); };
      bool known = true;

      if (section == "panel") {
        auto& p = cfg.system.panel;
        if (key == "p_max_w") p.p_max_w = num();
        else if (key == "v_mp") p.v_mp = num();
        else if (key == "i_mp") p.i_mp = num();
        else if (key == "v_oc") p.v_oc = num();
        else if (key == "i_sc") p.i_sc = num();
        else if (key == "area_m2") p.area_m2 = num();
        else if (key == "cell_efficiency") p.cell_efficiency = num();
        else if (key == "temp_min_c") p.temp_min_c = num();
        else if (key == "temp_max_c") p.temp_max_c = num();
        else if (key == "count") p.count = integer();
        else known = false;
      } else if (section == "converter") {
        auto& c = cfg.system.converter;
        if (key == "f_nominal_hz") c.f_nominal_hz = num();
        else if (key == "v_in_nominal") c.v_in_nominal = num();
        else if (key == "v_out_nominal") c.v_out_nominal = num();
        else if (key == "eta_min") c.eta_min = num();
        else if (key == "eta_max") c.eta_max = num();
        else if (key == "i_load_lo_a") c.i_load_lo_a = num();
        else if (key == "i_load_hi_a") c.i_load_hi_a = num();
        else if (key == "c_out_f") c.c_out_f = num();
        else if (key == "ovp_threshold_v") c.ovp_threshold_v = num();
        else if (key == "otp_threshold_c") c.otp_threshold_c = num();
        else if (key == "temp_derate_per_c") c.temp_derate_per_c = num();
        else if (key == "hysteresis") c.hysteresis = num();
        else if (key == "min_dwell_steps") c.min_dwell_steps = integer();
        else known = false;
      } else if (section == "battery") {
        auto& b = cfg.system.battery;
        if (key == "capacity_ah") b.capacity_ah = num();
        else if (key == "v_nominal") b.v_nominal = num();
        else if (key == "energy_kwh") b.energy_kwh = num();
        else if (key == "count") b.count = integer();
        else if (key == "soc_min") b.soc_min = num();
        else if (key == "soc_init") b.soc_init = num();
        else if (key == "eta_charge") b.eta_charge = num();
        else if (key == "eta_discharge") b.eta_discharge = num();
        else if (key == "max_charge_w") b.max_charge_w = num();
        else if (key == "max_discharge_w") b.max_discharge_w = num();
        else known = false;
      } else if (section == "inverter") {
        auto& i = cfg.system.inverter;
        if (key == "eta_inv") i.eta_inv = num();
        else if (key == "p_rated_w") i.p_rated_w = num();
        else known = false;
      } else if (section == "mppt") {
        auto& m = cfg.system.mppt_init;
        if (key == "target_v") m.target_v = num();
        else if (key == "step_v") m.step_v = num();
        else known = false;
      } else if (section == "engine") {
        if (key == "step_s") cfg.system.step_s = num();
        else if (key == "mppt_iters_per_step") cfg.system.mppt_iters_per_step = integer();
        else known = false;
      } else if (section == "loads") {
        if (key == "load") {
          // name,kind,p_w,priority
          const auto f = split(value, ',');
          if (f.size() != 4)
            throw ParseError("config line " + std::to_string(line) +
                             ": load needs name,kind,p_w,priority");
          LoadItem item;
          item.name = f[0];
          if (f[1] == "DC") item.kind = LoadKind::DC;
          else if (f[1] == "AC") item.kind = LoadKind::AC;
          else
            throw ParseError("config line " + std::to_string(line) +
                             ": load kind must be DC or AC");
          item.p_w = to_double(f[2], line);
          item.priority = to_int(f[3], line);
          cfg.system.loads.push_back(std::move(item));
        } else {
          known = false;
        }
      } else if (section == "economics") {
        auto& cat = cfg.catalog;
        if (key == "item") {
          // name,unit_price_usd,quantity,lifetime_min_y,lifetime_max_y
          const auto f = split(value, ',');
          if (f.size() != 5)
            throw ParseError("config line " + std::to_string(line) +
                             ": item needs name,price,qty,life_min,life_max");
          cat.items.push_back({f[0], to_cents(f[1], line), to_int(f[2], line),
                               to_int(f[3], line), to_int(f[4], line)});
        } else if (key == "shipping_usd") cat.shipping = cents();
        else if (key == "maintenance_free_years") cat.maintenance_free_years = integer();
        else if (key == "maintenance_annual_usd") cat.maintenance_annual_fee = cents();
        else if (key == "daily_kwh") cfg.daily_kwh = num();
        else known = false;
      } else if (section == "pnl") {
        auto& p = cfg.pnl;
        if (key == "unit_price_usd") p.unit_price = cents();
        else if (key == "unit_cogs_usd") p.unit_cogs = cents();
        else if (key == "fixed_opex_usd") p.fixed_opex_per_year = cents();
        else if (key == "initial_capital_usd") p.initial_capital = cents();
        else if (key == "units_per_year") {
          p.units_sold_per_year.clear();
          for (const auto& u : split(value, ',')) p.units_sold_per_year.push_back(to_int(u, line));
        } else known = false;
      } else if (section == "daq") {
        if (key == "min_uptime") cfg.daq_thresholds.min_uptime = num();
        else if (key == "max_faults") cfg.daq_thresholds.max_faults = integer();
        else known = false;
      } else {
        throw ParseError("config line " + std::to_string(line) + ": unknown section [" +
                         section + "]");
      }

      if (!known)
        throw ParseError("config line " + std::to_string(line) + ": unknown key '" + key +
                         "' in section [" + section + "]");
    }
  }
  return cfg;
}

}  // namespace shsim
