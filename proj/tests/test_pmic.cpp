#include <doctest.h>

#include <cmath>
#include <random>

#include "shsim/errors.hpp"
#include "shsim/pmic.hpp"

using namespace shsim;

namespace {

ConverterSpec chip_spec() {
  // Chip-scale validation parameters.
  ConverterSpec spec;
  spec.f_nominal_hz = 30e6;
  spec.v_in_nominal = 1.2;
  spec.v_out_nominal = 2.4;
  spec.i_load_lo_a = 0.1;
  spec.i_load_hi_a = 0.5;
  spec.c_out_f = 1.872e-6;
  spec.ovp_threshold_v = 2.76;
  return spec;
}

}  // namespace

TEST_CASE("boost ratio") {
  CHECK(ideal_boost_ratio(1.2, 0.5) == doctest::Approx(2.4).epsilon(1e-12));
  CHECK(ideal_boost_ratio(5.0, 0.0) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(ideal_boost_ratio(12.0, 0.75) == doctest::Approx(48.0).epsilon(1e-12));
  CHECK_THROWS_AS(ideal_boost_ratio(1.0, 0.96), ValidationError);
}

TEST_CASE("output ripple") {
  // c_out back-solved so max load at 30 MHz reproduces 4.45 mV.
  CHECK(output_ripple(0.5, 0.5, 30e6, 1.872e-6) == doctest::Approx(4.45e-3).epsilon(0.005));
  CHECK(output_ripple(0.0, 0.5, 30e6, 1.872e-6) == 0.0);
  // doubling f_sw halves the ripple exactly
  CHECK(output_ripple(0.5, 0.5, 60e6, 1.872e-6) ==
        doctest::Approx(0.5 * output_ripple(0.5, 0.5, 30e6, 1.872e-6)).epsilon(1e-12));
}

TEST_CASE("efficiency endpoints and midpoint") {
  const auto spec = chip_spec();
  CHECK(efficiency_at(spec, 0.0, 25.0) == doctest::Approx(0.70).epsilon(1e-12));
  CHECK(efficiency_at(spec, 1.0, 25.0) == doctest::Approx(0.85).epsilon(1e-12));
  CHECK(efficiency_at(spec, 0.5, 25.0) == doctest::Approx(0.775).epsilon(1e-12));
}

TEST_CASE("efficiency is monotone in load and temperature (property)") {
  auto spec = chip_spec();
  spec.temp_derate_per_c = 0.002;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lf(0.0, 1.0), temp(0.0, 80.0);
  for (int i = 0; i < 100; ++i) {
    const double a = lf(rng), b = lf(rng);
    const double t = temp(rng);
    const auto [lo, hi] = std::minmax(a, b);
    CHECK(efficiency_at(spec, lo, t) <= efficiency_at(spec, hi, t) + 1e-12);
    const double t2 = temp(rng);
    const auto [tlo, thi] = std::minmax(t, t2);
    CHECK(efficiency_at(spec, a, thi) <= efficiency_at(spec, a, tlo) + 1e-12);
  }
}

TEST_CASE("P&O tracker converges to the oracle and stays bounded") {
  const auto model = fit_model(PanelSpec{});

  SUBCASE("dark input does not diverge") {
    MpptState state{.target_v = 21.5, .step_v = 0.2};
    for (int i = 0; i < 50; ++i) {
      auto [next, op] = mppt_step(state, model, 0.0, 25.0);
      CHECK(op.p == 0.0);
      CHECK(next.target_v == 0.0);
      state = next;
    }
  }

  SUBCASE("400-step convergence to >= 99% of the grid-scan oracle") {
    for (double g : {200.0, 400.0, 600.0, 800.0, 1000.0}) {
      const auto oracle = mpp_scan(model, g, 25.0, 0.001);
      MpptState state{.target_v = open_circuit_voltage(model, g, 25.0) / 2.0, .step_v = 0.2};
      double applied = 0.0;
      for (int i = 0; i < 400; ++i) {
        auto [next, op] = mppt_step(state, model, g, 25.0);
        state = next;
        applied = op.p;
      }
      CHECK(applied >= 0.99 * oracle.p);
    }
  }

  SUBCASE("steady state is a bounded limit cycle of <= 3 voltage levels") {
    MpptState state{.target_v = 21.5, .step_v = 0.2};
    for (int i = 0; i < 400; ++i) state = mppt_step(state, model, 1000.0, 25.0).first;
    std::vector<double> levels;
    for (int i = 0; i < 40; ++i) {
      auto [next, op] = mppt_step(state, model, 1000.0, 25.0);
      state = next;
      bool known = false;
      for (double v : levels)
        if (std::abs(v - op.v) < 1e-9) known = true;
      if (!known) levels.push_back(op.v);
    }
    CHECK(levels.size() <= 3);
  }

  SUBCASE("never applies a voltage outside [0, Voc] (property)") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> g_dist(0.0, 1200.0);
    MpptState state{.target_v = 21.5, .step_v = 0.5};
    for (int i = 0; i < 500; ++i) {
      const double g = g_dist(rng);
      auto [next, op] = mppt_step(state, model, g, 25.0);
      CHECK(op.v >= 0.0);
      CHECK(op.v <= open_circuit_voltage(model, g, 25.0) + 1e-12);
      state = next;
    }
  }
}

TEST_CASE("mode transitions follow surplus/deficit with hysteresis") {
  ConverterSpec spec;  // system defaults: hysteresis 5%, dwell 5
  ConverterState state;

  SUBCASE("sufficient power selects PWM") {
    state.mode = ConverterMode::PFM;
    state.steps_in_mode = 10;
    state = mode_transition(state, 400.0, 250.0, 0.6, 1.0, spec);
    CHECK(state.mode == ConverterMode::PWM);
  }
  SUBCASE("deficit selects PFM") {
    state.mode = ConverterMode::PWM;
    state.steps_in_mode = 10;
    state = mode_transition(state, 50.0, 250.0, 0.6, 1.0, spec);
    CHECK(state.mode == ConverterMode::PFM);
  }
  SUBCASE("exact match inside the band holds PWM") {
    state.mode = ConverterMode::PWM;
    state.steps_in_mode = 10;
    state = mode_transition(state, 250.0, 250.0, 0.6, 1.0, spec);
    CHECK(state.mode == ConverterMode::PWM);
  }
  SUBCASE("chatter inside the band causes zero transitions after settle") {
    state.mode = ConverterMode::PFM;
    state.steps_in_mode = 10;
    int transitions = 0;
    auto mode = state.mode;
    for (int i = 0; i < 100; ++i) {
      // alternate just above demand and just inside the band below it
      const double p_mpp = (i % 2 == 0) ? 251.0 : 245.0;  // band floor is 237.5
      state = mode_transition(state, p_mpp, 250.0, 0.6, 1.0, spec);
      if (state.mode != mode) ++transitions;
      mode = state.mode;
    }
    CHECK(transitions == 1);  // the initial settle into PWM only
  }
  SUBCASE("minimum dwell defers a flip-flopping input") {
    state.mode = ConverterMode::PWM;
    state.steps_in_mode = 0;  // just switched
    state = mode_transition(state, 0.0, 250.0, 0.6, 1.0, spec);
    CHECK(state.mode == ConverterMode::PWM);  // dwell not yet served
    for (int i = 0; i < 5; ++i) state = mode_transition(state, 0.0, 250.0, 0.6, 1.0, spec);
    CHECK(state.mode == ConverterMode::PFM);
  }
}

TEST_CASE("protection latches faults until reset") {
  const auto spec = chip_spec();
  ConverterState state;
  state.mode = ConverterMode::PWM;

  SUBCASE("overvoltage") {
    state.v_out = spec.ovp_threshold_v * 1.01;
    state = protection_check(state, spec, 25.0);
    CHECK(state.mode == ConverterMode::Fault);
    CHECK(state.fault == FaultCode::OVP);
    CHECK(state.p_out == 0.0);
  }
  SUBCASE("overtemperature") {
    state.v_out = 2.4;
    state = protection_check(state, spec, 90.0);
    CHECK(state.mode == ConverterMode::Fault);
    CHECK(state.fault == FaultCode::OTP);
  }
  SUBCASE("nominal conditions leave the state untouched") {
    state.v_out = 2.4;
    state.p_out = 1.0;
    const auto next = protection_check(state, spec, 25.0);
    CHECK(next.mode == ConverterMode::PWM);
    CHECK(next.p_out == 1.0);
    CHECK(!next.fault.has_value());
  }
  SUBCASE("fault survives any number of mode transitions") {
    state.v_out = 100.0;
    state = protection_check(state, spec, 25.0);
    for (int i = 0; i < 20; ++i) {
      state = mode_transition(state, 1000.0, 10.0, 0.6, 1.0, spec);
      state = protection_check(state, spec, 25.0);
      CHECK(state.mode == ConverterMode::Fault);
    }
    state = reset_fault(state);
    CHECK(state.mode == ConverterMode::PWM);
    CHECK(!state.fault.has_value());
  }
}

TEST_CASE("equivalent switching frequency is inverse in target voltage") {
  ConverterSpec spec;
  CHECK(equivalent_switching_freq(spec, spec.v_in_nominal) ==
        doctest::Approx(spec.f_nominal_hz).epsilon(1e-12));
  CHECK(equivalent_switching_freq(spec, spec.v_in_nominal / 2.0) ==
        doctest::Approx(2.0 * spec.f_nominal_hz).epsilon(1e-12));
}
