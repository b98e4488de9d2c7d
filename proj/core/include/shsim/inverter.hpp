#pragma once

namespace shsim {

struct InverterSpec {
  double eta_inv = 0.90;
  double p_rated_w = 300.0;

  void validate() const;
};

struct ConversionResult {
  double p_ac_w = 0.0;
  double curtailed_w = 0.0;  // DC input the rated inverter could not take
};

/// p_ac = eta_inv * min(p_dc_in, p_rated/eta_inv); the clipped remainder is
/// reported as curtailment.
ConversionResult convert(const InverterSpec& spec, double p_dc_in);

/// How to read the transmission-capacity cosine argument.
enum class PfMode {
  Radians,      // cos(arg in radians); reproduces the printed ~1.52
  PowerFactor,  // arg is the power factor itself; yields ~1.047
};

struct AcDcComparison {
  double v_dc = 0.0;
  double i_dc = 0.0;
  double v_ac = 0.0;  // rms
  double i_ac = 0.0;  // rms
  double power_factor_arg = 0.9;

  /// The substitution V_DC = sqrt(2)*V_AC, I_DC = I_AC/sqrt(3).
  static AcDcComparison from_ac(double v_ac, double i_ac, double power_factor_arg = 0.9);
};

/// 2*V_DC*I_DC / (sqrt(3)*V_AC*I_AC*cosfac). Throws ValidationError when the
/// cosine factor is not positive.
double dc_capacity_ratio(const AcDcComparison& c, PfMode mode = PfMode::Radians);

}  // namespace shsim
