#include "shsim/inverter.hpp"

#include <cmath>

#include "shsim/errors.hpp"

namespace shsim {

void InverterSpec::validate() const {
  if (!(eta_inv > 0.0 && eta_inv <= 1.0)) throw ValidationError("eta_inv outside (0, 1]");
  if (!(p_rated_w > 0.0)) throw ValidationError("p_rated_w must be positive");
}

ConversionResult convert(const InverterSpec& spec, double p_dc_in) {
  if (p_dc_in < 0.0) throw ValidationError("negative DC input power");
  const double p_dc_max = spec.p_rated_w / spec.eta_inv;
  const double p_dc_used = std::min(p_dc_in, p_dc_max);
  return {.p_ac_w = spec.eta_inv * p_dc_used, .curtailed_w = p_dc_in - p_dc_used};
}

AcDcComparison AcDcComparison::from_ac(double v_ac, double i_ac, double power_factor_arg) {
  return {.v_dc = std::sqrt(2.0) * v_ac,
          .i_dc = i_ac / std::sqrt(3.0),
          .v_ac = v_ac,
          .i_ac = i_ac,
          .power_factor_arg = power_factor_arg};
}

double dc_capacity_ratio(const AcDcComparison& c, PfMode mode) {
  if (!(c.v_dc > 0.0 && c.i_dc > 0.0 && c.v_ac > 0.0 && c.i_ac > 0.0))
    throw ValidationError("comparison fields must be positive");
  const double cosfac =
      mode == PfMode::Radians ? std::cos(c.power_factor_arg) : c.power_factor_arg;
  if (cosfac <= 0.0) throw ValidationError("cosine factor must be positive");
  return 2.0 * c.v_dc * c.i_dc / (std::sqrt(3.0) * c.v_ac * c.i_ac * cosfac);
}

}  // namespace shsim
