#include "stirap/pulses.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace stirap {

void PulseConfig::validate() const {
  if (!(alpha_t > 0) || !std::isfinite(alpha_t))
    throw std::invalid_argument("alpha_t must be positive and finite");
  if (!(t_scale > 0) || !std::isfinite(t_scale))
    throw std::invalid_argument("t_scale must be positive and finite");
  if (!(delta_t >= 0) || !std::isfinite(delta_t))
    throw std::invalid_argument("delta_t must be non-negative and finite");
  if (!(t_max_over_t >= 5) || !std::isfinite(t_max_over_t))
    throw std::invalid_argument("t_max_over_t must be >= 5");
}

std::pair<double, double> eval_pulses(const PulseConfig& cfg, double t) {
  const double tau = t / cfg.t_scale;
  const double env =
      cfg.alpha_t / (cfg.t_scale * std::numbers::sqrt2) / std::cosh(tau);
  const double x = 0.25 * std::numbers::pi * (std::tanh(tau) + 1.0);
  const double o1 = env * std::cos(x);  // early pulse
  const double o2 = env * std::sin(x);  // late pulse
  if (cfg.sequence == PulseSequence::Intuitive) return {o1, o2};
  return {o2, o1};  // Stokes precedes pump
}

AdiabaticFrame frame_at(const PulseConfig& cfg, double t) {
  const double T = cfg.t_scale;
  const double tau = t / T;

  AdiabaticFrame f;
  f.t = t;
  std::tie(f.omega_p, f.omega_s) = eval_pulses(cfg, t);
  f.omega0 = std::hypot(f.omega_p, f.omega_s);
  f.theta = std::atan2(f.omega_p, f.omega_s);

  const double delta = cfg.delta_t / T;
  // atan2 also covers delta = 0, where phi = pi/4 identically.
  f.phi = 0.5 * std::atan2(2.0 * f.omega0, delta);

  const double sech2 = 1.0 / (std::cosh(tau) * std::cosh(tau));
  const double dtheta = 0.25 * std::numbers::pi * sech2 / T;
  f.theta_dot = cfg.sequence == PulseSequence::Counterintuitive ? dtheta : -dtheta;

  // Chain rule through tan(2 phi) = 2 omega0 / delta with
  // omega0' = -omega0 tanh(tau) / T; vanishes identically at delta = 0. The
  // guard covers delta = 0 with sech underflowed, where the limit is 0.
  const double omega0_dot = -f.omega0 * std::tanh(tau) / T;
  const double phi_den = delta * delta + 4.0 * f.omega0 * f.omega0;
  f.phi_dot = phi_den > 0 ? delta * omega0_dot / phi_den : 0.0;

  // Subtraction-free eigenvalue pair: omega_plus is well conditioned for
  // delta >= 0 and the product identity pins omega_minus. omega_plus = 0
  // forces omega0 = 0, where both eigenvalues vanish.
  const double disc = std::hypot(delta, 2.0 * f.omega0);
  f.omega_plus = 0.5 * (delta + disc);
  f.omega_minus = f.omega_plus > 0 ? -(f.omega0 * f.omega0) / f.omega_plus : 0.0;
  return f;
}

}  // namespace stirap
