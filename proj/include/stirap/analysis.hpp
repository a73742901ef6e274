#pragma once

// Weak-damping analytics (adiabatic elimination of the bright pair) and the
// strong-damping subspace classification.

#include <complex>
#include <stdexcept>
#include <string>

#include "stirap/hamiltonians.hpp"
#include "stirap/pulses.hpp"

namespace stirap {

// The elimination denominator collapsed; the local decay coefficient is
// undefined for this parameter combination.
class DegenerateDenominator : public std::runtime_error {
 public:
  explicit DegenerateDenominator(double t)
      : std::runtime_error("degenerate elimination denominator at t = " +
                           std::to_string(t)),
        t_(t) {}
  double where() const noexcept { return t_; }

 private:
  double t_;
};

// Local complex decay coefficient A(t) of the dark-state amplitude,
// da0/dt = -A(t) a0, after eliminating the bright pair.
struct EliminationCoefficient {
  std::complex<double> value;
  ModelKind model = ModelKind::Effective;
  double t = 0;
};

EliminationCoefficient elimination_coefficient(const AdiabaticFrame& frame,
                                               double gamma, ModelKind model);

// Dark-state survival probability |a0(t)|^2 = exp(-2 Int Re A dt') from the
// window start to t, by adaptive quadrature.
double dark_state_survival(const PulseConfig& cfg, double gamma, ModelKind model,
                           double t);

// First-order transfer efficiency for weak damping: the closed-form
// exponential integral appropriate to the sequence (and, for the
// counterintuitive sequence, to the model).
double weak_damping_p3(const PulseConfig& cfg, double gamma, ModelKind model);

enum class ZenoOutcome { CompleteTransfer, RemainsInState1, TotalLoss };

struct ZenoPrediction {
  ZenoOutcome outcome;
  std::string rationale;
};

std::string to_string(ZenoOutcome outcome);

// Strong-damping (Gamma >> omega0, theta_dot) asymptotic outcome for the
// given model and pulse ordering.
ZenoPrediction zeno_predict(ModelKind model, PulseSequence sequence);

}  // namespace stirap
