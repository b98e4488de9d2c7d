#pragma once

namespace shsim {

/// Datasheet parameters for one panel plus the array multiplicity.
struct PanelSpec {
  double p_max_w = 300.0;
  double v_mp = 36.0;
  double i_mp = 8.33;
  double v_oc = 43.0;
  double i_sc = 9.17;
  double area_m2 = 4.0;
  double cell_efficiency = 0.219;
  double temp_min_c = -40.0;
  double temp_max_c = 85.0;
  int count = 1;  // identical panels in parallel

  /// Throws ValidationError on inconsistent datasheet values.
  void validate() const;
  double fill_factor() const { return p_max_w / (v_oc * i_sc); }
};

/// 3-parameter single-diode curve I(V) = i_ph - i_0*(exp(V/v_t_eff) - 1),
/// fitted so I(0)=Isc and I(Voc)=0 hold exactly at STC.
struct PvModel {
  PanelSpec spec;
  double i_ph_stc = 0.0;  // photo-current at STC, A
  double i_0 = 0.0;       // diode saturation current, A
  double v_t_eff = 0.0;   // lumped n*Ns*Vt, V

  double soiling = 1.0;       // (0,1], optical transmission lost to dust
  double optical_gain = 1.0;  // (0,1.1], configured antireflection benefit

  // Temperature coefficients, fraction of STC value per degC above 25.
  double voc_temp_coeff = -0.0030;
  double isc_temp_coeff = 0.0005;

  // Soiling accumulation: linear decay toward the floor, reset by rain.
  double soiling_floor = 0.95;
  double soiling_rate_per_day = 0.01;
};

struct PvOperatingPoint {
  double v = 0.0;
  double i = 0.0;
  double p = 0.0;  // always v*i
};

/// Fits v_t_eff by bisection so the curve's maximum power matches v_mp*i_mp
/// within 2% of p_max. Throws FitError if no v_t_eff in [0.5, 10] V works.
PvModel fit_model(const PanelSpec& spec);

/// Open-circuit voltage of the array at the given conditions (0 when dark).
double open_circuit_voltage(const PvModel& model, double g, double temp_c);

/// Array current/power at terminal voltage v. Current scales with
/// irradiance, soiling, optical gain, temperature, and spec.count; clamped
/// at zero past open circuit. Throws OutOfTemperatureError outside the
/// panel's datasheet window.
PvOperatingPoint iv_at(const PvModel& model, double v, double g, double temp_c);

/// Exhaustive voltage grid scan; the brute-force MPP oracle.
PvOperatingPoint mpp_scan(const PvModel& model, double g, double temp_c, double step_v);

/// Rain restores soiling to 1.0; otherwise it decays toward soiling_floor.
PvModel apply_soiling_step(PvModel model, double dt_s, bool rain);

/// Raw cell output: area * efficiency * irradiance.
double raw_cell_power(double area_m2, double efficiency, double g);

}  // namespace shsim
