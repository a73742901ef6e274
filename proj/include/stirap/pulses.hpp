#pragma once

// Sech/tanh pump-Stokes pulse family with constant rms Rabi frequency
// envelope, and the instantaneous two-angle frame it induces.

#include <utility>

namespace stirap {

enum class PulseSequence { Intuitive, Counterintuitive };

// All rates are stored in units of 1/t_scale and times in units of t_scale;
// t_scale is a presentation-layer scale (the CLI keeps it at 1).
struct PulseConfig {
  double alpha_t = 10.0;  // dimensionless pulse area (alpha * T)
  double t_scale = 1.0;   // pulse width T, > 0
  double delta_t = 1.0;   // single-photon detuning (Delta * T), >= 0;
                          // 0 selects the resonant limit phi = pi/4, phi_dot = 0
  PulseSequence sequence = PulseSequence::Counterintuitive;
  double t_max_over_t = 10.0;  // half-window of the integration, >= 5

  void validate() const;  // throws std::invalid_argument on violation
  double t_max() const { return t_max_over_t * t_scale; }
};

// Snapshot of the mixing/detuning angles, their exact time derivatives, and
// the bright-pair eigenvalues (the dark eigenvalue is identically zero).
struct AdiabaticFrame {
  double t = 0;
  double omega_p = 0;  // pump Rabi frequency
  double omega_s = 0;  // Stokes Rabi frequency
  double omega0 = 0;   // sqrt(omega_p^2 + omega_s^2)
  double theta = 0;    // tan(theta) = omega_p / omega_s, in [0, pi/2]
  double phi = 0;      // tan(2 phi) = 2 omega0 / Delta, in (0, pi/2)
  double theta_dot = 0;
  double phi_dot = 0;
  double omega_plus = 0;   // (Delta + sqrt(Delta^2 + 4 omega0^2)) / 2
  double omega_minus = 0;  // -omega0^2 / omega_plus

  double delta() const { return omega_plus + omega_minus; }
};

// Pump and Stokes Rabi frequencies at time t, ordered (omega_p, omega_s).
std::pair<double, double> eval_pulses(const PulseConfig& cfg, double t);

AdiabaticFrame frame_at(const PulseConfig& cfg, double t);

}  // namespace stirap
