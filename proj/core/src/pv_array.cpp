#include "shsim/pv_array.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shsim/errors.hpp"

namespace shsim {

void PanelSpec::validate() const {
  if (!(v_mp > 0.0 && v_mp < v_oc)) throw ValidationError("need 0 < v_mp < v_oc");
  if (!(i_mp > 0.0 && i_mp < i_sc)) throw ValidationError("need 0 < i_mp < i_sc");
  if (std::abs(v_mp * i_mp - p_max_w) / p_max_w > 0.01)
    throw ValidationError("datasheet inconsistent: v_mp*i_mp differs from p_max by >1%");
  const double ff = fill_factor();
  if (!(ff > 0.5 && ff < 0.9))
    throw ValidationError("fill factor " + std::to_string(ff) + " outside (0.5, 0.9)");
  if (count < 1) throw ValidationError("panel count must be >= 1");
  if (!(temp_min_c < temp_max_c)) throw ValidationError("empty temperature window");
  if (!(area_m2 > 0.0)) throw ValidationError("area must be positive");
  if (!(cell_efficiency > 0.0 && cell_efficiency < 1.0))
    throw ValidationError("cell efficiency outside (0, 1)");
}

namespace {

// Single-panel curve for a candidate thermal voltage, with the closure
// i_ph = i_sc and i_0 = i_sc / (exp(v_oc/vt) - 1).
double panel_current(double v, double i_sc, double v_oc, double vt) {
  const double i0 = i_sc / std::expm1(v_oc / vt);
  return i_sc - i0 * std::expm1(v / vt);
}

double peak_power(double i_sc, double v_oc, double vt) {
  // Golden-section on the unimodal P(V).
  constexpr double kPhi = 0.6180339887498949;
  double a = 0.0, b = v_oc;
  double x1 = b - kPhi * (b - a);
  double x2 = a + kPhi * (b - a);
  auto p = [&](double v) { return v * panel_current(v, i_sc, v_oc, vt); };
  double p1 = p(x1), p2 = p(x2);
  while (b - a > 1e-9 * v_oc) {
    if (p1 < p2) {
      a = x1;
      x1 = x2;
      p1 = p2;
      x2 = a + kPhi * (b - a);
      p2 = p(x2);
    } else {
      b = x2;
      x2 = x1;
      p2 = p1;
      x1 = b - kPhi * (b - a);
      p1 = p(x1);
    }
  }
  return p((a + b) / 2.0);
}

}  // namespace

PvModel fit_model(const PanelSpec& spec) {
  spec.validate();
  const double target = spec.v_mp * spec.i_mp;

  // peak_power is strictly decreasing in vt (sharper knee at small vt),
  // so bisect on the sign of the residual.
  double lo = 0.5, hi = 10.0;
  const double p_lo = peak_power(spec.i_sc, spec.v_oc, lo);
  const double p_hi = peak_power(spec.i_sc, spec.v_oc, hi);
  double vt;
  if (p_lo < target) {
    vt = lo;
  } else if (p_hi > target) {
    vt = hi;
  } else {
    for (int it = 0; it < 200; ++it) {
      vt = (lo + hi) / 2.0;
      if (peak_power(spec.i_sc, spec.v_oc, vt) > target)
        lo = vt;
      else
        hi = vt;
    }
    vt = (lo + hi) / 2.0;
  }

  if (std::abs(peak_power(spec.i_sc, spec.v_oc, vt) - target) / spec.p_max_w > 0.02)
    throw FitError("no v_t_eff in [0.5, 10] V matches the MPP within 2%");

  PvModel model;
  model.spec = spec;
  model.v_t_eff = vt;
  model.i_ph_stc = spec.i_sc;
  model.i_0 = spec.i_sc / std::expm1(spec.v_oc / vt);
  return model;
}

namespace {

// Photo-current per panel at the given conditions.
double photo_current(const PvModel& m, double g, double temp_c) {
  return m.i_ph_stc * (g / 1000.0) * m.soiling * m.optical_gain *
         (1.0 + m.isc_temp_coeff * (temp_c - 25.0));
}

// Voltage shift of the diode knee from temperature (negative above 25 C).
double temp_voltage_shift(const PvModel& m, double temp_c) {
  return m.spec.v_oc * m.voc_temp_coeff * (temp_c - 25.0);
}

void check_temp_window(const PvModel& m, double temp_c) {
  if (temp_c < m.spec.temp_min_c || temp_c > m.spec.temp_max_c)
    throw OutOfTemperatureError("panel temperature " + std::to_string(temp_c) +
                                " C outside [" + std::to_string(m.spec.temp_min_c) + ", " +
                                std::to_string(m.spec.temp_max_c) + "]");
}

}  // namespace

double open_circuit_voltage(const PvModel& model, double g, double temp_c) {
  check_temp_window(model, temp_c);
  const double i_ph = photo_current(model, g, temp_c);
  if (i_ph <= 0.0) return 0.0;
  return temp_voltage_shift(model, temp_c) +
         model.v_t_eff * std::log1p(i_ph / model.i_0);
}

PvOperatingPoint iv_at(const PvModel& model, double v, double g, double temp_c) {
  check_temp_window(model, temp_c);
  if (g < 0.0) throw ValidationError("negative irradiance");
  const double i_ph = photo_current(model, g, temp_c);
  double i = 0.0;
  if (i_ph > 0.0) {
    const double dv = temp_voltage_shift(model, temp_c);
    i = i_ph - model.i_0 * std::expm1((v - dv) / model.v_t_eff);
    i = std::max(0.0, i) * model.spec.count;
  }
  return {.v = v, .i = i, .p = v * i};
}

PvOperatingPoint mpp_scan(const PvModel& model, double g, double temp_c, double step_v) {
  if (!(step_v > 0.0 && step_v <= 0.5)) throw ValidationError("step_v outside (0, 0.5]");
  const double voc = open_circuit_voltage(model, g, temp_c);
  PvOperatingPoint best{};
  for (double v = 0.0; v <= voc; v += step_v) {
    const auto op = iv_at(model, v, g, temp_c);
    if (op.p > best.p) best = op;
  }
  return best;
}

PvModel apply_soiling_step(PvModel model, double dt_s, bool rain) {
  if (!(dt_s >= 0.0)) throw ValidationError("negative dt");
  if (rain) {
    model.soiling = 1.0;  // self-cleaning surface, flushed by rain
  } else {
    model.soiling = std::max(model.soiling_floor,
                             model.soiling - model.soiling_rate_per_day * dt_s / 86400.0);
  }
  return model;
}

double raw_cell_power(double area_m2, double efficiency, double g) {
  return area_m2 * efficiency * g;
}

}  // namespace shsim
