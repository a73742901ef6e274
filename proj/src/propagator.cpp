#include "stirap/propagator.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "stirap/io.hpp"

namespace stirap {

void SimOptions::validate() const {
  const auto tol_ok = [](double v) { return v > 0 && v <= 1e-3; };
  if (!tol_ok(rel_tol) || !tol_ok(abs_tol))
    throw std::invalid_argument("tolerances must lie in (0, 1e-3]");
  if (!(max_step >= 0) || !std::isfinite(max_step))
    throw std::invalid_argument("max_step must be non-negative");
  if (sampling < 2) throw std::invalid_argument("sampling must be >= 2");
}

AmplitudeState initial_state(const PulseConfig& cfg, BasisKind basis) {
  cfg.validate();
  AmplitudeState s;
  s.t = -cfg.t_max();
  s.basis = basis;
  if (basis == BasisKind::Bare) {
    s.components << 1.0, 0.0, 0.0;
  } else {
    // Exact change of basis of bare |1>: first row of the eigenvector matrix.
    const Eigen::Matrix3d u = eigenvector_matrix(frame_at(cfg, s.t));
    s.components = u.row(0).transpose().cast<std::complex<double>>();
  }
  return s;
}

std::array<double, 3> bare_populations(const AdiabaticFrame& frame,
                                       const AmplitudeState& state) {
  Eigen::Vector3cd bare = state.components;
  if (state.basis == BasisKind::Adiabatic)
    bare = eigenvector_matrix(frame).cast<std::complex<double>>() * state.components;
  return {std::norm(bare(0)), std::norm(bare(1)), std::norm(bare(2))};
}

Trajectory propagate(const PulseConfig& cfg, double gamma, ModelKind model,
                     BasisKind basis, const SimOptions& opts) {
  cfg.validate();
  opts.validate();
  if (!(gamma >= 0) || !std::isfinite(gamma))
    throw std::invalid_argument("gamma must be non-negative and finite");

  const double T = cfg.t_scale;
  const double tmax = cfg.t_max();
  const auto rhs = [&](double t, const Eigen::Vector3cd& y) -> Eigen::Vector3cd {
    const GeneratorMatrix g = build_generator(frame_at(cfg, t), gamma, model, basis);
    return std::complex<double>(0, -1) * (g.entries * y);
  };

  StepControls ctl;
  ctl.rel_tol = opts.rel_tol;
  ctl.abs_tol = opts.abs_tol;
  ctl.max_step = opts.max_step;
  if (gamma * T >= 50.0) {
    // Strong damping: start below the fastest decay scale and grow slowly.
    ctl.initial_step = std::min(0.1 / gamma, 1e-2 * 2.0 * tmax);
    ctl.max_growth = 1.5;
  }

  const int n = opts.sampling;
  std::vector<double> sample_ts(n);
  for (int i = 0; i < n; ++i)
    sample_ts[i] = -tmax + (2.0 * tmax) * i / (n - 1);
  sample_ts.back() = tmax;

  Trajectory traj;
  traj.basis = basis;
  traj.times.resize(n);
  traj.p1.resize(n);
  traj.p2.resize(n);
  traj.p3.resize(n);
  traj.norm.resize(n);
  traj.amplitudes.resize(n);

  const auto record = [&](std::size_t i, double t, const Eigen::Vector3cd& y) {
    AmplitudeState s{y, t, basis};
    const auto p = bare_populations(frame_at(cfg, t), s);
    traj.times[i] = t / T;
    traj.p1[i] = p[0];
    traj.p2[i] = p[1];
    traj.p3[i] = p[2];
    traj.norm[i] = y.squaredNorm();
    traj.amplitudes[i] = y;
  };

  Eigen::Vector3cd y_final;
  const StepStats stats =
      integrate_dopri5(rhs, initial_state(cfg, basis).components, -tmax, tmax,
                       ctl, sample_ts, record, &y_final);
  traj.steps_accepted = stats.accepted;

  AmplitudeState fin{y_final, tmax, basis};
  const auto pf = bare_populations(frame_at(cfg, tmax), fin);
  traj.p1_final = pf[0];
  traj.p2_final = pf[1];
  traj.p3_final = pf[2];
  traj.norm_final = y_final.squaredNorm();
  return traj;
}

void Trajectory::write_csv(const std::string& path) const {
  std::string out = "t_over_T,p1,p2,p3,norm\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    out += format_sig(times[i]);
    out += ',';
    out += format_sig(p1[i]);
    out += ',';
    out += format_sig(p2[i]);
    out += ',';
    out += format_sig(p3[i]);
    out += ',';
    out += format_sig(norm[i]);
    out += '\n';
  }
  write_text_file(path, out);
}

}  // namespace stirap
