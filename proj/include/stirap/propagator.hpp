#pragma once

// Time propagation of the three-level amplitude equations
// i da/dt = H(t) a with either dissipation model, in either basis.

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "stirap/hamiltonians.hpp"
#include "stirap/pulses.hpp"
#include "stirap/rk.hpp"

namespace stirap {

struct SimOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.0;  // 0 = unlimited, in units of t_scale
  int sampling = 2001;    // uniform samples over [-t_max, t_max]

  void validate() const;  // throws std::invalid_argument
};

struct AmplitudeState {
  Eigen::Vector3cd components = Eigen::Vector3cd::Zero();
  double t = 0;
  BasisKind basis = BasisKind::Bare;
};

struct Trajectory {
  std::vector<double> times;  // t / T
  std::vector<double> p1, p2, p3;  // bare-basis populations
  std::vector<double> norm;        // total remaining population
  std::vector<Eigen::Vector3cd> amplitudes;  // in the propagation basis
  BasisKind basis = BasisKind::Bare;
  std::size_t steps_accepted = 0;  // internal integrator steps taken

  double p1_final = 0, p2_final = 0, p3_final = 0, norm_final = 0;

  // Columns: t_over_T,p1,p2,p3,norm (12 significant digits).
  void write_csv(const std::string& path) const;
};

// System prepared in bare |1> at t = -t_max, expressed in `basis`.
AmplitudeState initial_state(const PulseConfig& cfg, BasisKind basis);

// Populations of the bare levels {|1>, |2>, |3>} for a state in either basis;
// `frame` must be evaluated at the state's own time.
std::array<double, 3> bare_populations(const AdiabaticFrame& frame,
                                       const AmplitudeState& state);

Trajectory propagate(const PulseConfig& cfg, double gamma, ModelKind model,
                     BasisKind basis, const SimOptions& opts = {});

}  // namespace stirap
