#pragma once

// Four-level master equation: the three coupled levels plus a sink level
// |4> that collects spontaneous decay from the instantaneous bright states,
// with optional thermal re-excitation.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "stirap/propagator.hpp"
#include "stirap/pulses.hpp"

namespace stirap {

struct ReservoirSpec {
  double gamma = 0;    // bright-state decay scale, units 1/t_scale
  double n_plus = 0;   // thermal occupation at the |+> transition
  double n_minus = 0;  // thermal occupation at the |-> transition
  double omega4 = 0;   // energy of the sink level

  void validate() const;  // throws std::invalid_argument
};

// Instantaneous transition rates; at zero temperature
// gamma_plus = Gamma cos^2(phi) and gamma_minus = Gamma sin^2(phi).
struct TransitionRates {
  double gamma_plus = 0;
  double gamma_minus = 0;
  double gamma_plus_exc = 0;
  double gamma_minus_exc = 0;
};

TransitionRates rates_at(const AdiabaticFrame& frame, const ReservoirSpec& res);

// Right-hand side of the master equation in the bare basis: coherent part
// with the four-level Hamiltonian, plus decay |+/-> -> |4> and thermal
// excitation |4> -> |+/->, all built from the instantaneous eigenstates.
Eigen::Matrix4cd master_rhs(const Eigen::Matrix4cd& rho, double t,
                            const PulseConfig& cfg, const ReservoirSpec& res);

struct MasterTrajectory {
  std::vector<double> times;  // t / T
  std::vector<double> p1, p2, p3, p4;
  std::vector<double> trace;
  std::vector<Eigen::Matrix4cd> states;

  double p1_final = 0, p2_final = 0, p3_final = 0, p4_final = 0;
  double trace_final = 0;

  // Columns: t_over_T,p1,p2,p3,p4,trace (12 significant digits).
  void write_csv(const std::string& path) const;
};

// Propagates rho(-t_max) = |1><1|.
MasterTrajectory propagate_master(const PulseConfig& cfg, const ReservoirSpec& res,
                                  const SimOptions& opts = {});

// Hand-expanded scalar rate equations for the adiabatic-basis coefficient
// matrix of the Effective model (zero temperature). Input need not be
// Hermitian; each of the nine entries is written out termwise.
Eigen::Matrix3cd adiabatic_rate_rhs(const Eigen::Matrix3cd& coeffs,
                                    const AdiabaticFrame& frame,
                                    const ReservoirSpec& res);

}  // namespace stirap
