#include "stirap/lindblad.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "stirap/io.hpp"
#include "stirap/rk.hpp"

namespace stirap {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

void ReservoirSpec::validate() const {
  if (!(gamma >= 0) || !std::isfinite(gamma))
    throw std::invalid_argument("gamma must be non-negative and finite");
  if (!(n_plus >= 0) || !(n_minus >= 0) || !std::isfinite(n_plus) ||
      !std::isfinite(n_minus))
    throw std::invalid_argument("thermal occupations must be non-negative");
  if (!std::isfinite(omega4))
    throw std::invalid_argument("omega4 must be finite");
}

TransitionRates rates_at(const AdiabaticFrame& f, const ReservoirSpec& res) {
  const double sp = std::sin(f.phi), cp = std::cos(f.phi);
  TransitionRates r;
  r.gamma_plus = res.gamma * cp * cp * (res.n_plus + 1.0);
  r.gamma_minus = res.gamma * sp * sp * (res.n_minus + 1.0);
  r.gamma_plus_exc = res.gamma * cp * cp * res.n_plus;
  r.gamma_minus_exc = res.gamma * sp * sp * res.n_minus;
  return r;
}

namespace {

Eigen::Matrix4cd system_hamiltonian(const AdiabaticFrame& f, double omega4) {
  Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
  h(0, 1) = h(1, 0) = cd(f.omega_p, 0);
  h(1, 2) = h(2, 1) = cd(f.omega_s, 0);
  h(1, 1) = cd(f.delta(), 0);
  h(3, 3) = cd(omega4, 0);
  return h;
}

// D[L] rho for L = |to><from|, with unit-vector kets.
Eigen::Matrix4cd dissipator(const Eigen::Vector4cd& to, const Eigen::Vector4cd& from,
                            const Eigen::Matrix4cd& rho) {
  const cd pop = from.dot(rho * from);  // <from| rho |from>
  Eigen::Matrix4cd out = pop * (to * to.adjoint());
  out -= 0.5 * (from * (from.adjoint() * rho) + (rho * from) * from.adjoint());
  return out;
}

}  // namespace

Eigen::Matrix4cd master_rhs(const Eigen::Matrix4cd& rho, double t,
                            const PulseConfig& cfg, const ReservoirSpec& res) {
  const AdiabaticFrame f = frame_at(cfg, t);
  const double sp = std::sin(f.phi), cp = std::cos(f.phi);
  const double st = std::sin(f.theta), ct = std::cos(f.theta);

  Eigen::Vector4cd kp, km, k4;
  kp << cd(sp * st, 0), cd(cp, 0), cd(sp * ct, 0), cd(0, 0);
  km << cd(cp * st, 0), cd(-sp, 0), cd(cp * ct, 0), cd(0, 0);
  k4 << cd(0, 0), cd(0, 0), cd(0, 0), cd(1, 0);

  const Eigen::Matrix4cd h = system_hamiltonian(f, res.omega4);
  Eigen::Matrix4cd d = -I * (h * rho - rho * h);

  // The non-Hermitian generators absorb the full rates Gamma cos^2(phi) and
  // Gamma sin^2(phi) as amplitude decay, so equivalence of the two
  // descriptions requires jump strengths of twice the transition rates.
  const TransitionRates r = rates_at(f, res);
  if (r.gamma_plus > 0) d += 2.0 * r.gamma_plus * dissipator(k4, kp, rho);
  if (r.gamma_minus > 0) d += 2.0 * r.gamma_minus * dissipator(k4, km, rho);
  if (r.gamma_plus_exc > 0) d += 2.0 * r.gamma_plus_exc * dissipator(kp, k4, rho);
  if (r.gamma_minus_exc > 0) d += 2.0 * r.gamma_minus_exc * dissipator(km, k4, rho);
  return d;
}

MasterTrajectory propagate_master(const PulseConfig& cfg, const ReservoirSpec& res,
                                  const SimOptions& opts) {
  cfg.validate();
  res.validate();
  opts.validate();

  const double T = cfg.t_scale;
  const double tmax = cfg.t_max();
  const auto rhs = [&](double t, const Eigen::Matrix4cd& rho) -> Eigen::Matrix4cd {
    return master_rhs(rho, t, cfg, res);
  };

  StepControls ctl;
  ctl.rel_tol = opts.rel_tol;
  ctl.abs_tol = opts.abs_tol;
  ctl.max_step = opts.max_step;
  const double fastest = 2.0 * res.gamma * (1.0 + std::max(res.n_plus, res.n_minus));
  if (res.gamma * T >= 50.0) {
    ctl.initial_step = std::min(0.1 / fastest, 1e-2 * 2.0 * tmax);
    ctl.max_growth = 1.5;
  }

  const int n = opts.sampling;
  std::vector<double> sample_ts(n);
  for (int i = 0; i < n; ++i)
    sample_ts[i] = -tmax + (2.0 * tmax) * i / (n - 1);
  sample_ts.back() = tmax;

  MasterTrajectory traj;
  traj.times.resize(n);
  traj.p1.resize(n);
  traj.p2.resize(n);
  traj.p3.resize(n);
  traj.p4.resize(n);
  traj.trace.resize(n);
  traj.states.resize(n);

  const auto record = [&](std::size_t i, double t, const Eigen::Matrix4cd& rho) {
    traj.times[i] = t / T;
    traj.p1[i] = rho(0, 0).real();
    traj.p2[i] = rho(1, 1).real();
    traj.p3[i] = rho(2, 2).real();
    traj.p4[i] = rho(3, 3).real();
    traj.trace[i] = rho.trace().real();
    traj.states[i] = rho;
  };

  Eigen::Matrix4cd rho0 = Eigen::Matrix4cd::Zero();
  rho0(0, 0) = cd(1, 0);
  Eigen::Matrix4cd rho_final;
  integrate_dopri5(rhs, rho0, -tmax, tmax, ctl, sample_ts, record, &rho_final);

  traj.p1_final = rho_final(0, 0).real();
  traj.p2_final = rho_final(1, 1).real();
  traj.p3_final = rho_final(2, 2).real();
  traj.p4_final = rho_final(3, 3).real();
  traj.trace_final = rho_final.trace().real();
  return traj;
}

Eigen::Matrix3cd adiabatic_rate_rhs(const Eigen::Matrix3cd& q,
                                    const AdiabaticFrame& f,
                                    const ReservoirSpec& res) {
  if (res.n_plus != 0 || res.n_minus != 0)
    throw std::invalid_argument(
        "adiabatic rate equations are defined at zero temperature");

  const double sp = std::sin(f.phi), cp = std::cos(f.phi);
  const double u = f.theta_dot * sp;   // dark <-> |+> pumping
  const double v = f.theta_dot * cp;   // dark <-> |-> pumping
  const double w = f.phi_dot;          // bright <-> bright pumping
  const double gp = res.gamma * cp * cp;  // |+> amplitude decay
  const double gm = res.gamma * sp * sp;  // |-> amplitude decay
  const double wp = f.omega_plus, wm = f.omega_minus;

  // Index order (+, 0, -).
  const cd rpp = q(0, 0), rp0 = q(0, 1), rpm = q(0, 2);
  const cd r0p = q(1, 0), r00 = q(1, 1), r0m = q(1, 2);
  const cd rmp = q(2, 0), rm0 = q(2, 1), rmm = q(2, 2);

  Eigen::Matrix3cd d;
  d(0, 0) = u * (r0p + rp0) + w * (rmp + rpm) - 2.0 * gp * rpp;
  d(1, 1) = -u * (rp0 + r0p) - v * (rm0 + r0m);
  d(2, 2) = -w * (rpm + rmp) + v * (r0m + rm0) - 2.0 * gm * rmm;

  d(0, 1) = -(I * wp + gp) * rp0 + u * (r00 - rpp) + w * rm0 - v * rpm;
  d(1, 0) = (I * wp - gp) * r0p + u * (r00 - rpp) + w * r0m - v * rmp;

  d(0, 2) = -(I * (wp - wm) + gp + gm) * rpm + u * r0m + w * (rmm - rpp) + v * rp0;
  d(2, 0) = (I * (wp - wm) - gp - gm) * rmp + u * rm0 + w * (rmm - rpp) + v * r0p;

  d(1, 2) = (I * wm - gm) * r0m - u * rpm + v * (r00 - rmm) - w * r0p;
  d(2, 1) = -(I * wm + gm) * rm0 - u * rmp + v * (r00 - rmm) - w * rp0;
  return d;
}

void MasterTrajectory::write_csv(const std::string& path) const {
  std::string out = "t_over_T,p1,p2,p3,p4,trace\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    out += format_sig(times[i]);
    out += ',';
    out += format_sig(p1[i]);
    out += ',';
    out += format_sig(p2[i]);
    out += ',';
    out += format_sig(p3[i]);
    out += ',';
    out += format_sig(p4[i]);
    out += ',';
    out += format_sig(trace[i]);
    out += '\n';
  }
  write_text_file(path, out);
}

}  // namespace stirap
