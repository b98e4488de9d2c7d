#include "shsim/environment.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "shsim/errors.hpp"
#include "shsim/io.hpp"

namespace shsim {

namespace {

constexpr double kDaySeconds = 86400.0;

void check_sample(const EnvironmentSample& s, std::size_t index) {
  if (!(s.irradiance_g >= 0.0 && s.irradiance_g <= 1500.0))
    throw ValidationError("sample " + std::to_string(index) + ": irradiance " +
                          std::to_string(s.irradiance_g) + " outside [0, 1500]");
  if (!(s.ambient_temp_c >= -60.0 && s.ambient_temp_c <= 90.0))
    throw ValidationError("sample " + std::to_string(index) + ": temperature " +
                          std::to_string(s.ambient_temp_c) + " outside [-60, 90]");
}

}  // namespace

void ScenarioProfile::validate() const {
  if (samples.empty()) throw ValidationError("profile has no samples");
  if (!(step_s > 0.0)) throw ValidationError("profile step must be positive");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    check_sample(samples[i], i);
    if (i > 0) {
      double dt = samples[i].t_s - samples[i - 1].t_s;
      if (std::abs(dt - step_s) > 1e-6)
        throw ValidationError("non-uniform step between samples " + std::to_string(i - 1) +
                              " and " + std::to_string(i));
    }
  }
}

ScenarioProfile clear_sky_day(double sun_hours, double peak_g, double step_s,
                              double ambient_c) {
  if (!(sun_hours >= 1.0 && sun_hours <= 16.0))
    throw ValidationError("sun_hours outside [1, 16]");
  if (!(peak_g > 0.0 && peak_g <= 1500.0) && peak_g != 0.0)
    throw ValidationError("peak_g outside (0, 1500]");
  if (!(step_s >= 1.0 && step_s <= 3600.0))
    throw ValidationError("step_s outside [1, 3600]");

  const double width_s = sun_hours * 3600.0;
  const double start_s = kDaySeconds / 2.0 - width_s / 2.0;
  ScenarioProfile profile;
  profile.step_s = step_s;
  profile.label = "clear_sky";
  const auto n = static_cast<std::size_t>(kDaySeconds / step_s);
  profile.samples.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    EnvironmentSample s;
    s.t_s = static_cast<double>(k) * step_s;
    s.ambient_temp_c = ambient_c;
    const double u = (s.t_s - start_s) / width_s;
    s.irradiance_g = (u >= 0.0 && u <= 1.0) ? peak_g * std::sin(std::numbers::pi * u) : 0.0;
    profile.samples.push_back(s);
  }
  return profile;
}

ScenarioProfile cloudy_modifier(const ScenarioProfile& profile, double attenuation,
                                std::uint64_t seed) {
  if (!(attenuation >= 0.0 && attenuation <= 1.0))
    throw ValidationError("attenuation outside [0, 1]");
  ScenarioProfile out = profile;
  out.label = profile.label + "_cloudy";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (auto& s : out.samples) {
    const double factor = 1.0 - attenuation * dist(rng);
    s.irradiance_g *= factor;
  }
  return out;
}

ScenarioProfile load_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open profile: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty profile file: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t_s,g_wm2,temp_c,rain")
    throw ParseError("bad profile header, expected t_s,g_wm2,temp_c,rain");

  ScenarioProfile profile;
  profile.label = path.stem().string();
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    EnvironmentSample s;
    try {
      if (!std::getline(ss, field, ',')) throw std::invalid_argument("t_s");
      s.t_s = std::stod(field);
      if (!std::getline(ss, field, ',')) throw std::invalid_argument("g_wm2");
      s.irradiance_g = std::stod(field);
      if (!std::getline(ss, field, ',')) throw std::invalid_argument("temp_c");
      s.ambient_temp_c = std::stod(field);
      if (!std::getline(ss, field, ',')) throw std::invalid_argument("rain");
      s.rain = std::stoi(field) != 0;
    } catch (const std::exception&) {
      throw ParseError("profile row " + std::to_string(row) + ": malformed");
    }
    try {
      check_sample(s, profile.samples.size());
    } catch (const ValidationError& e) {
      throw ParseError("profile row " + std::to_string(row) + ": " + e.what());
    }
    profile.samples.push_back(s);
  }
  if (profile.samples.empty()) throw ParseError("profile has no data rows");
  if (profile.samples.size() >= 2) {
    profile.step_s = profile.samples[1].t_s - profile.samples[0].t_s;
  } else {
    profile.step_s = 60.0;
  }
  for (std::size_t i = 1; i < profile.samples.size(); ++i) {
    double dt = profile.samples[i].t_s - profile.samples[i - 1].t_s;
    if (!(dt > 0.0) || std::abs(dt - profile.step_s) > 1e-6)
      throw ParseError("profile row " + std::to_string(i + 1) + ": non-uniform step");
  }
  return profile;
}

void write_profile_csv(const ScenarioProfile& profile, const std::filesystem::path& path) {
  std::string out = "t_s,g_wm2,temp_c,rain\n";
  for (const auto& s : profile.samples) {
    out += format_double(s.t_s, 3) + ',' + format_double(s.irradiance_g, 6) + ',' +
           format_double(s.ambient_temp_c, 6) + ',' + (s.rain ? '1' : '0') + '\n';
  }
  atomic_write(path, out);
}

}  // namespace shsim
