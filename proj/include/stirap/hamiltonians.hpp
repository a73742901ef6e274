#pragma once

// Non-Hermitian generators of the damped three-level dynamics, in the bare
// and adiabatic bases, for the two dissipation models under comparison:
//  - Effective: decay acts on the instantaneous bright states, with
//    eigenstate-resolved rates Gamma cos^2(phi) and Gamma sin^2(phi).
//  - Phenomenological: decay acts on the bare intermediate state at rate
//    Gamma, which in the adiabatic basis adds a bright-bright coupling
//    (i/2) Gamma sin(2 phi) on top of the Effective generator.

#include <Eigen/Dense>
#include <utility>

#include "stirap/pulses.hpp"

namespace stirap {

enum class ModelKind { Effective, Phenomenological };
enum class BasisKind { Adiabatic, Bare };

struct GeneratorMatrix {
  Eigen::Matrix3cd entries;
  BasisKind basis = BasisKind::Adiabatic;
  ModelKind model = ModelKind::Effective;
  double t = 0;

  Eigen::Matrix3cd hermitian_part() const {
    return 0.5 * (entries + entries.adjoint());
  }
  // (i/2)(H - H^dagger): Hermitian, positive semi-definite for both models.
  Eigen::Matrix3cd decay_part() const {
    return std::complex<double>(0, 0.5) * (entries - entries.adjoint());
  }
};

// Orthogonal matrix whose columns are the instantaneous eigenvectors
// |+>, |0>, |-> expressed in the bare basis {|1>, |2>, |3>}.
Eigen::Matrix3d eigenvector_matrix(const AdiabaticFrame& frame);

GeneratorMatrix build_generator(const AdiabaticFrame& frame, double gamma,
                                ModelKind model, BasisKind basis);

// Strong-damping decomposition: the Gamma-proportional part (unperturbed)
// and the remaining Hermitian part (perturbation). Defined in the adiabatic
// basis only; Bare requests are rejected.
std::pair<GeneratorMatrix, GeneratorMatrix> zeno_split(
    const AdiabaticFrame& frame, double gamma, ModelKind model,
    BasisKind basis = BasisKind::Adiabatic);

// Restriction of the Gamma = 0 generator to the decay-free doublet of the
// phenomenological strong-damping limit, ordered {|0_1>, |0_2>}:
// [[0, -i theta_dot], [i theta_dot, 0]].
Eigen::Matrix2cd doublet_restriction(const AdiabaticFrame& frame);

}  // namespace stirap
