#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "stirap/pulses.hpp"

using namespace stirap;

namespace {

PulseConfig base_config(PulseSequence seq = PulseSequence::Counterintuitive) {
  PulseConfig cfg;
  cfg.alpha_t = 10.0;
  cfg.t_scale = 1.0;
  cfg.delta_t = 1.0;
  cfg.sequence = seq;
  cfg.t_max_over_t = 10.0;
  return cfg;
}

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("pulses") {

TEST_CASE("equal pulses of height alpha/2T at the crossing point") {
  for (auto seq : {PulseSequence::Counterintuitive, PulseSequence::Intuitive}) {
    const auto [wp, ws] = eval_pulses(base_config(seq), 0.0);
    CHECK(wp == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(ws == doctest::Approx(5.0).epsilon(1e-12));
  }
}

TEST_CASE("constant rms envelope: wp^2 + ws^2 = (alpha^2/2T^2) sech^2(t/T)") {
  for (auto seq : {PulseSequence::Counterintuitive, PulseSequence::Intuitive}) {
    const PulseConfig cfg = base_config(seq);
    for (int i = 0; i <= 400; ++i) {
      const double t = -10.0 + 20.0 * i / 400.0;
      const auto [wp, ws] = eval_pulses(cfg, t);
      CHECK(wp >= 0.0);
      CHECK(ws >= 0.0);
      const double sech = 1.0 / std::cosh(t);
      const double expected = 0.5 * cfg.alpha_t * cfg.alpha_t * sech * sech;
      CHECK(wp * wp + ws * ws == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("rms Rabi frequency at t = T") {
  const AdiabaticFrame f = frame_at(base_config(), 1.0);
  const double expected = 10.0 / (std::sqrt(2.0) * std::cosh(1.0));
  CHECK(f.omega0 == doctest::Approx(expected).epsilon(1e-13));
  CHECK(f.omega0 == doctest::Approx(4.5824357148465600).epsilon(1e-12));
}

TEST_CASE("mixing angle theta and its closed-form rate") {
  const PulseConfig ci = base_config();
  CHECK(frame_at(ci, 0.0).theta == doctest::Approx(kPi / 4).epsilon(1e-13));
  CHECK(frame_at(ci, 0.0).theta_dot == doctest::Approx(kPi / 4).epsilon(1e-13));
  for (int i = 0; i <= 200; ++i) {
    const double t = -10.0 + 20.0 * i / 200.0;
    const double sech = 1.0 / std::cosh(t);
    const double rate = kPi / 4 * sech * sech;
    CHECK(frame_at(ci, t).theta_dot == doctest::Approx(rate).epsilon(1e-12));
    CHECK(frame_at(base_config(PulseSequence::Intuitive), t).theta_dot ==
          doctest::Approx(-rate).epsilon(1e-12));
  }
}

TEST_CASE("detuning angle at the crossing point and at the window edges") {
  const PulseConfig cfg = base_config();
  const AdiabaticFrame f0 = frame_at(cfg, 0.0);
  const double expected = 0.5 * std::atan2(10.0 * std::sqrt(2.0), 1.0);
  CHECK(f0.phi == doctest::Approx(expected).epsilon(1e-13));
  CHECK(f0.phi == doctest::Approx(0.7501016).epsilon(1e-6));
  CHECK(std::abs(frame_at(cfg, -10.0).phi) < 1.5e-3);
  CHECK(std::abs(frame_at(cfg, 10.0).phi) < 1.5e-3);
}

TEST_CASE("resonant limit pins phi = pi/4 with zero rate") {
  PulseConfig cfg = base_config();
  cfg.delta_t = 0.0;
  for (double t : {-9.7, -3.0, 0.0, 1.3, 8.9}) {
    const AdiabaticFrame f = frame_at(cfg, t);
    CHECK(f.phi == doctest::Approx(kPi / 4).epsilon(1e-14));
    CHECK(f.phi_dot == 0.0);
  }
}

TEST_CASE("frame invariants on a dense grid") {
  for (double delta_t : {0.0, 0.3, 1.0, 4.0}) {
    PulseConfig cfg = base_config();
    cfg.delta_t = delta_t;
    for (int i = 0; i <= 500; ++i) {
      const double t = -10.0 + 20.0 * i / 500.0;
      const AdiabaticFrame f = frame_at(cfg, t);
      CHECK(f.omega0 * f.omega0 ==
            doctest::Approx(f.omega_p * f.omega_p + f.omega_s * f.omega_s)
                .epsilon(1e-12));
      CHECK(f.theta >= 0.0);
      CHECK(f.theta <= kPi / 2);
      CHECK(f.phi >= 0.0);
      CHECK(f.phi < kPi / 2);
      CHECK(f.omega_plus + f.omega_minus ==
            doctest::Approx(delta_t).epsilon(1e-10));
      CHECK(f.omega_plus * f.omega_minus ==
            doctest::Approx(-f.omega0 * f.omega0).epsilon(1e-10));
    }
  }
}

TEST_CASE("eigenvalues match the cot/tan oracle away from the window edges") {
  const PulseConfig cfg = base_config();
  for (double t : {-4.0, -1.0, 0.0, 0.5, 2.0, 4.0}) {
    const AdiabaticFrame f = frame_at(cfg, t);
    CHECK(f.omega_plus ==
          doctest::Approx(f.omega0 / std::tan(f.phi)).epsilon(1e-10));
    CHECK(f.omega_minus ==
          doctest::Approx(-f.omega0 * std::tan(f.phi)).epsilon(1e-10));
  }
}

TEST_CASE("closed-form angle rates agree with central finite differences") {
  const double step = 1e-5;
  for (auto seq : {PulseSequence::Counterintuitive, PulseSequence::Intuitive}) {
    const PulseConfig cfg = base_config(seq);
    for (int i = 0; i < 1000; ++i) {
      const double t = -10.0 + 20.0 * i / 999.0;
      const AdiabaticFrame f = frame_at(cfg, t);
      const AdiabaticFrame fp = frame_at(cfg, t + step);
      const AdiabaticFrame fm = frame_at(cfg, t - step);
      CHECK(std::abs(f.theta_dot - (fp.theta - fm.theta) / (2 * step)) < 1e-6);
      CHECK(std::abs(f.phi_dot - (fp.phi - fm.phi) / (2 * step)) < 1e-6);
    }
  }
}

TEST_CASE("theta sweeps monotonically between 0 and pi/2") {
  const PulseConfig ci = base_config();
  const PulseConfig in = base_config(PulseSequence::Intuitive);
  double prev_ci = -1.0, prev_in = kPi;
  for (int i = 0; i <= 1000; ++i) {
    const double t = -10.0 + 20.0 * i / 1000.0;
    const double th_ci = frame_at(ci, t).theta;
    const double th_in = frame_at(in, t).theta;
    CHECK(th_ci >= prev_ci);
    CHECK(th_in <= prev_in);
    CHECK(th_ci == doctest::Approx(kPi / 2 - th_in).epsilon(1e-12));
    prev_ci = th_ci;
    prev_in = th_in;
  }
  CHECK(frame_at(ci, -10.0).theta < 1e-3);
  CHECK(frame_at(ci, 10.0).theta > kPi / 2 - 1e-3);
}

TEST_CASE("time reflection exchanges the two sequences") {
  const PulseConfig ci = base_config();
  const PulseConfig in = base_config(PulseSequence::Intuitive);
  for (double t : {-8.0, -2.5, -0.4, 0.0, 1.1, 3.3, 9.0}) {
    const auto [p_in, s_in] = eval_pulses(in, t);
    const auto [p_ci_r, s_ci_r] = eval_pulses(ci, -t);
    CHECK(p_in == doctest::Approx(p_ci_r).epsilon(1e-13));
    CHECK(s_in == doctest::Approx(s_ci_r).epsilon(1e-13));
    const auto [p_ci, s_ci] = eval_pulses(ci, t);
    CHECK(p_in == doctest::Approx(s_ci).epsilon(1e-13));
    CHECK(s_in == doctest::Approx(p_ci).epsilon(1e-13));
  }
}

TEST_CASE("configuration validation") {
  PulseConfig cfg = base_config();
  CHECK_NOTHROW(cfg.validate());
  cfg.alpha_t = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.t_scale = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.delta_t = -0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = base_config();
  cfg.t_max_over_t = 4.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

}  // TEST_SUITE
