#pragma once

// Adaptive explicit Runge-Kutta integration: Dormand-Prince 5(4) embedded
// pair, proportional-integral step-size control, and a 4th-order dense
// output used to decouple the sampling grid from the internal steps.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace stirap {

// Step-size control collapsed below the resolvable time scale; the
// parameter combination is not integrable at the requested tolerance.
class StepSizeUnderflow : public std::runtime_error {
 public:
  StepSizeUnderflow(double t, double h)
      : std::runtime_error("step size underflow at t = " + std::to_string(t) +
                           " (h = " + std::to_string(h) + ")"),
        t_(t),
        h_(h) {}
  double where() const noexcept { return t_; }
  double step() const noexcept { return h_; }

 private:
  double t_;
  double h_;
};

struct StepControls {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.0;      // 0 = unlimited
  double initial_step = 0.0;  // 0 = automatic
  double max_growth = 5.0;    // cap on step growth after an accepted step
};

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

namespace rk_detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Difference between the 5th- and 4th-order weights.
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights.
inline constexpr double d1 = -12715105075.0 / 11282082432.0,
                        d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0,
                        d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0,
                        d7 = 69997945.0 / 29380423.0;

template <class State>
double error_norm(const State& err, const State& y0, const State& y1,
                  double atol, double rtol) {
  const auto sc =
      (atol + rtol * y0.array().abs().max(y1.array().abs())).eval();
  const double s = (err.array().abs() / sc).square().sum();
  return std::sqrt(s / static_cast<double>(err.size()));
}

}  // namespace rk_detail

// Integrates dy/dt = f(t, y) from t0 to t1 (t1 > t0). `sample_times` must be
// sorted ascending within [t0, t1]; for each entry, sink(index, t, y(t)) is
// called with the dense-output interpolant. Returns the final state in `y`
// (by reference through the sink at the last sample) and the step counts.
template <class State, class Rhs, class Sink>
StepStats integrate_dopri5(Rhs&& f, State y, double t0, double t1,
                           const StepControls& ctl,
                           std::span<const double> sample_times, Sink&& sink,
                           State* final_state = nullptr) {
  using namespace rk_detail;
  if (!(t1 > t0)) throw std::invalid_argument("integration span must be forward");
  const double span = t1 - t0;
  const double sample_fudge = 1e-12 * span;

  double t = t0;
  std::size_t next_sample = 0;
  while (next_sample < sample_times.size() &&
         sample_times[next_sample] <= t0 + sample_fudge) {
    sink(next_sample, sample_times[next_sample], y);
    ++next_sample;
  }

  const double safe = 0.9, beta = 0.04;
  const double expo1 = 0.2 - beta * 0.75;
  const double facmin = 0.2;
  double facmax = ctl.max_growth;
  double facold = 1e-4;

  double h = ctl.initial_step > 0 ? ctl.initial_step : 1e-2 * span;
  if (ctl.max_step > 0) h = std::min(h, ctl.max_step);
  h = std::min(h, span);

  StepStats stats;
  State k1 = f(t, y), k2, k3, k4, k5, k6, k7, ytmp, y1, err;
  bool rejected_last = false;

  while (t < t1) {
    const double hmin =
        16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), span);
    if (h < hmin) throw StepSizeUnderflow(t, h);

    bool last = false;
    if (t + h >= t1) {
      h = t1 - t;
      last = true;
    }

    ytmp = y + h * (a21 * k1);
    k2 = f(t + c2 * h, ytmp);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    k3 = f(t + c3 * h, ytmp);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    k4 = f(t + c4 * h, ytmp);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    k5 = f(t + c5 * h, ytmp);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    k6 = f(t + h, ytmp);
    y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    k7 = f(t + h, y1);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double errn = error_norm(err, y, y1, ctl.abs_tol, ctl.rel_tol);
    const double fac11 = std::pow(std::max(errn, 1e-32), expo1);

    if (errn <= 1.0) {
      const double t_new = last ? t1 : t + h;

      if (next_sample < sample_times.size() &&
          sample_times[next_sample] <= t_new + sample_fudge) {
        // Dense output over [t, t_new].
        const State dy = y1 - y;
        const State rcont3 = (h * k1 - dy).eval();
        const State rcont4 = (dy - h * k7 - rcont3).eval();
        const State rcont5 =
            (h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7))
                .eval();
        while (next_sample < sample_times.size() &&
               sample_times[next_sample] <= t_new + sample_fudge) {
          const double ts = sample_times[next_sample];
          double th = (ts - t) / h;
          th = std::clamp(th, 0.0, 1.0);
          const State ys =
              y + th * (dy + (1.0 - th) * (rcont3 + th * (rcont4 + (1.0 - th) * rcont5)));
          sink(next_sample, ts, ys);
          ++next_sample;
        }
      }

      ++stats.accepted;
      y = y1;
      k1 = k7;  // first-same-as-last
      t = t_new;

      double fac = fac11 / std::pow(facold, beta);
      facold = std::max(errn, 1e-4);
      fac = std::clamp(fac / safe, 1.0 / facmax, 1.0 / facmin);
      double h_new = h / fac;
      if (rejected_last) h_new = std::min(h_new, h);
      if (ctl.max_step > 0) h_new = std::min(h_new, ctl.max_step);
      h = h_new;
      rejected_last = false;
    } else {
      ++stats.rejected;
      h = h / std::min(1.0 / facmin, fac11 / safe);
      rejected_last = true;
    }
  }

  // Flush any samples stranded by floating-point slivers at t1.
  while (next_sample < sample_times.size()) {
    sink(next_sample, sample_times[next_sample], y);
    ++next_sample;
  }
  if (final_state) *final_state = y;
  return stats;
}

}  // namespace stirap
