#pragma once

// Parameter sweeps over the damping rate and the bundled figure recipes
// (CSV data plus a self-contained SVG rendering for each).

#include <optional>
#include <string>
#include <vector>

#include "stirap/hamiltonians.hpp"
#include "stirap/propagator.hpp"
#include "stirap/pulses.hpp"

namespace stirap {

struct SweepSpec {
  PulseConfig cfg;
  std::vector<double> gamma_grid;  // units 1/t_scale, ascending, >= 0
  std::vector<ModelKind> models = {ModelKind::Effective,
                                   ModelKind::Phenomenological};
  bool include_analytic = false;  // add the weak-damping column
  std::string output_path;        // optional CSV destination
  SimOptions sim{};

  void validate() const;
};

struct SweepRow {
  double gamma_t = 0;  // dimensionless Gamma * T
  ModelKind model = ModelKind::Effective;
  double p3_final = 0, p1_final = 0, norm_final = 0;
  std::optional<double> p3_analytic;
  std::string error;  // non-empty if this row's propagation failed
};

// Rows ordered by (gamma ascending, model); rows are independent jobs run on
// a worker pool bounded by the STIRAP_WORKERS environment variable (default:
// hardware concurrency). Output is identical regardless of worker count.
std::vector<SweepRow> sweep_gamma(const SweepSpec& spec);

// Columns: gammaT,model,p3_final,p1_final,norm_final[,p3_analytic].
std::string sweep_csv(const std::vector<SweepRow>& rows, bool analytic_column);
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows,
                     bool analytic_column);

std::size_t sweep_worker_count();

enum class FigureId { Fig2, Fig3a, Fig3b, Fig4a, Fig4b };

struct FigureSpec {
  FigureId id = FigureId::Fig2;
  double alpha_t = 10.0;
  double delta_t = 1.0;
  double gamma_t = 500.0;  // time-trace figures only
  std::string variant;     // time-trace figures: "<model>-<sequence>"
  int points = 0;          // sweep grid override; 0 = the figure's default
  std::string out_prefix;  // defaults to the figure name
  SimOptions sim{};
};

struct FigureOutput {
  std::string csv_path;
  std::string svg_path;
};

FigureOutput render_figure(const FigureSpec& spec);

}  // namespace stirap
