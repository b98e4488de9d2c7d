#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace shsim {

/// One exogenous input sample driving the simulation.
struct EnvironmentSample {
  double t_s = 0.0;           // seconds since scenario start
  double irradiance_g = 0.0;  // W/m^2, in [0, 1500]
  double ambient_temp_c = 25.0;  // degC, in [-60, 90]
  bool rain = false;
};

/// Uniformly spaced time series of environment samples.
struct ScenarioProfile {
  std::vector<EnvironmentSample> samples;
  double step_s = 60.0;
  std::string label;

  /// Throws ValidationError if empty, non-uniform, or a sample is out of range.
  void validate() const;
  double duration_s() const { return samples.size() * step_s; }
};

/// 24 h profile with a half-sine irradiance pulse of width `sun_hours`
/// centered at local noon. Integrated insolation is (2/pi)*peak_g*sun_hours.
ScenarioProfile clear_sky_day(double sun_hours, double peak_g, double step_s,
                              double ambient_c = 25.0);

/// Multiplies every sample's irradiance by a seeded pseudo-random factor in
/// [1-attenuation, 1]. Deterministic for a fixed seed.
ScenarioProfile cloudy_modifier(const ScenarioProfile& profile, double attenuation,
                                std::uint64_t seed);

/// CSV schema: header `t_s,g_wm2,temp_c,rain`, one row per step, rain in {0,1}.
ScenarioProfile load_profile_csv(const std::filesystem::path& path);
void write_profile_csv(const ScenarioProfile& profile, const std::filesystem::path& path);

}  // namespace shsim
