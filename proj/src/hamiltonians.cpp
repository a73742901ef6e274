#include "stirap/hamiltonians.hpp"

#include <cmath>
#include <stdexcept>

namespace stirap {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

Eigen::Matrix3d eigenvector_matrix(const AdiabaticFrame& f) {
  const double sp = std::sin(f.phi), cp = std::cos(f.phi);
  const double st = std::sin(f.theta), ct = std::cos(f.theta);
  Eigen::Matrix3d u;
  u << sp * st, ct, cp * st,  //
      cp, 0.0, -sp,           //
      sp * ct, -st, cp * ct;
  return u;
}

namespace {

Eigen::Matrix3cd adiabatic_effective(const AdiabaticFrame& f, double gamma) {
  const double sp = std::sin(f.phi), cp = std::cos(f.phi);
  const double u = f.theta_dot * sp, v = f.theta_dot * cp, w = f.phi_dot;
  Eigen::Matrix3cd h;
  h << cd(f.omega_plus, -gamma * cp * cp), I * u, I * w,  //
      -I * u, cd(0, 0), -I * v,                           //
      -I * w, I * v, cd(f.omega_minus, -gamma * sp * sp);
  return h;
}

Eigen::Matrix3cd bare_phenomenological(const AdiabaticFrame& f, double gamma) {
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  h(0, 1) = h(1, 0) = cd(f.omega_p, 0);
  h(1, 2) = h(2, 1) = cd(f.omega_s, 0);
  h(1, 1) = cd(f.delta(), -gamma);
  return h;
}

// Symmetric matrix multiplying -(i/2) Gamma sin(2 phi) in the bare-basis
// form of the Effective generator (the bright-bright projector |+><-| +
// |-><+| written out in the bare basis).
Eigen::Matrix3d bright_exchange_matrix(const AdiabaticFrame& f) {
  const double sp = std::sin(f.phi), cp = std::cos(f.phi);
  const double st = std::sin(f.theta), ct = std::cos(f.theta);
  const double s2p = 2.0 * sp * cp, c2p = cp * cp - sp * sp;
  Eigen::Matrix3d m;
  m << s2p * st * st, c2p * st, s2p * st * ct,  //
      c2p * st, -s2p, c2p * ct,                 //
      s2p * st * ct, c2p * ct, s2p * ct * ct;
  return m;
}

}  // namespace

GeneratorMatrix build_generator(const AdiabaticFrame& f, double gamma,
                                ModelKind model, BasisKind basis) {
  if (!(gamma >= 0) || !std::isfinite(gamma))
    throw std::invalid_argument("gamma must be non-negative and finite");

  GeneratorMatrix g;
  g.basis = basis;
  g.model = model;
  g.t = f.t;

  if (basis == BasisKind::Adiabatic) {
    g.entries = adiabatic_effective(f, gamma);
    if (model == ModelKind::Phenomenological) {
      const cd corner = I * (0.5 * gamma * std::sin(2.0 * f.phi));
      g.entries(0, 2) += corner;
      g.entries(2, 0) += corner;
    }
  } else {
    g.entries = bare_phenomenological(f, gamma);
    if (model == ModelKind::Effective) {
      g.entries -= I * (0.5 * gamma * std::sin(2.0 * f.phi)) *
                   bright_exchange_matrix(f).cast<cd>();
    }
  }
  return g;
}

std::pair<GeneratorMatrix, GeneratorMatrix> zeno_split(
    const AdiabaticFrame& f, double gamma, ModelKind model, BasisKind basis) {
  if (basis == BasisKind::Bare)
    throw std::invalid_argument(
        "the strong-damping split is defined in the adiabatic basis only");

  const double sp = std::sin(f.phi), cp = std::cos(f.phi);

  GeneratorMatrix unperturbed;
  unperturbed.basis = BasisKind::Adiabatic;
  unperturbed.model = model;
  unperturbed.t = f.t;
  unperturbed.entries = Eigen::Matrix3cd::Zero();
  unperturbed.entries(0, 0) = cd(0, -gamma * cp * cp);
  unperturbed.entries(2, 2) = cd(0, -gamma * sp * sp);
  if (model == ModelKind::Phenomenological) {
    const cd corner = I * (0.5 * gamma * std::sin(2.0 * f.phi));
    unperturbed.entries(0, 2) = corner;
    unperturbed.entries(2, 0) = corner;
  }

  GeneratorMatrix perturbation = build_generator(f, 0.0, model, BasisKind::Adiabatic);
  perturbation.model = model;
  return {unperturbed, perturbation};
}

Eigen::Matrix2cd doublet_restriction(const AdiabaticFrame& f) {
  Eigen::Matrix2cd h;
  h << cd(0, 0), -I * f.theta_dot,  //
      I * f.theta_dot, cd(0, 0);
  return h;
}

}  // namespace stirap
