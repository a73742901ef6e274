#include "stirap/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <thread>

#include "stirap/analysis.hpp"
#include "stirap/io.hpp"
#include "stirap/names.hpp"
#include "stirap/svg.hpp"

namespace stirap {

void SweepSpec::validate() const {
  cfg.validate();
  sim.validate();
  if (gamma_grid.empty()) throw std::invalid_argument("gamma grid is empty");
  for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
    if (!(gamma_grid[i] >= 0) || !std::isfinite(gamma_grid[i]))
      throw std::invalid_argument("gamma grid entries must be non-negative");
    if (i > 0 && !(gamma_grid[i] > gamma_grid[i - 1]))
      throw std::invalid_argument("gamma grid must be strictly increasing");
  }
  if (models.empty()) throw std::invalid_argument("model list is empty");
}

std::size_t sweep_worker_count() {
  if (const char* env = std::getenv("STIRAP_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end && *end == '\0' && n > 0) return static_cast<std::size_t>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, bool analytic_column) {
  std::string out = "gammaT,model,p3_final,p1_final,norm_final";
  if (analytic_column) out += ",p3_analytic";
  out += '\n';
  for (const auto& r : rows) {
    out += format_sig(r.gamma_t);
    out += ',';
    out += to_string(r.model);
    out += ',';
    out += format_sig(r.p3_final);
    out += ',';
    out += format_sig(r.p1_final);
    out += ',';
    out += format_sig(r.norm_final);
    if (analytic_column) {
      out += ',';
      out += format_sig(
          r.p3_analytic.value_or(std::numeric_limits<double>::quiet_NaN()));
    }
    out += '\n';
  }
  return out;
}

std::vector<SweepRow> sweep_gamma(const SweepSpec& spec) {
  spec.validate();

  std::vector<ModelKind> models = spec.models;
  std::sort(models.begin(), models.end());
  models.erase(std::unique(models.begin(), models.end()), models.end());

  std::vector<SweepRow> rows;
  rows.reserve(spec.gamma_grid.size() * models.size());
  for (double g : spec.gamma_grid)
    for (ModelKind m : models)
      rows.push_back({g * spec.cfg.t_scale, m, 0, 0, 0, std::nullopt, ""});

  const auto run_row = [&](SweepRow& row) {
    const double gamma = row.gamma_t / spec.cfg.t_scale;
    try {
      const Trajectory traj =
          propagate(spec.cfg, gamma, row.model, BasisKind::Bare, spec.sim);
      row.p3_final = traj.p3_final;
      row.p1_final = traj.p1_final;
      row.norm_final = traj.norm_final;
      if (spec.include_analytic)
        row.p3_analytic = weak_damping_p3(spec.cfg, gamma, row.model);
    } catch (const std::exception& e) {
      row.error = e.what();
      row.p3_final = row.p1_final = row.norm_final =
          std::numeric_limits<double>::quiet_NaN();
    }
  };

  const std::size_t workers = std::min(sweep_worker_count(), rows.size());
  if (workers <= 1) {
    for (auto& row : rows) run_row(row);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < rows.size(); i = next++) run_row(rows[i]);
      });
    for (auto& th : pool) th.join();
  }

  if (!spec.output_path.empty())
    write_sweep_csv(spec.output_path, rows, spec.include_analytic);
  return rows;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows,
                     bool analytic_column) {
  write_text_file(path, sweep_csv(rows, analytic_column));
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

std::vector<double> logspace(double lg_lo, double lg_hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = std::pow(10.0, lg_lo + (lg_hi - lg_lo) * i / (n - 1));
  return v;
}

std::string figure_name(FigureId id) {
  switch (id) {
    case FigureId::Fig2: return "fig2";
    case FigureId::Fig3a: return "fig3a";
    case FigureId::Fig3b: return "fig3b";
    case FigureId::Fig4a: return "fig4a";
    case FigureId::Fig4b: return "fig4b";
  }
  return "fig";
}

std::pair<ModelKind, PulseSequence> parse_variant(const std::string& v) {
  const auto dash = v.find('-');
  if (dash != std::string::npos) {
    try {
      return {model_from_string(v.substr(0, dash)),
              sequence_from_string(v.substr(dash + 1))};
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::invalid_argument(
      "variant must be <model>-<sequence>, e.g. effective-intuitive");
}

FigureOutput finish_chart(const std::string& prefix, const LineChart& chart,
                          const std::string& csv) {
  FigureOutput out{prefix + ".csv", prefix + ".svg"};
  write_text_file(out.csv_path, csv);
  try {
    write_text_file(out.svg_path, chart.render());
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(out.csv_path, ec);
    throw;
  }
  return out;
}

FigureOutput render_sweep_figure(const FigureSpec& spec, PulseSequence sequence,
                                 bool log_grid, bool analytic) {
  SweepSpec sw;
  sw.cfg.alpha_t = spec.alpha_t;
  sw.cfg.delta_t = spec.delta_t;
  sw.cfg.sequence = sequence;
  sw.include_analytic = analytic;
  sw.sim = spec.sim;
  const int n = spec.points > 0 ? spec.points : (log_grid ? 51 : 61);
  sw.gamma_grid = log_grid ? logspace(-2, 3, n) : linspace(0, 3, n);
  const auto rows = sweep_gamma(sw);

  LineChart chart;
  chart.title = "Final transfer vs damping (" + to_string(sequence) + " ordering)";
  chart.x_label = "Gamma T";
  chart.y_label = "p3 at +t_max";
  chart.log_x = log_grid;

  const ModelKind kinds[2] = {ModelKind::Effective, ModelKind::Phenomenological};
  const char* colors[2] = {"#1f4e9c", "#c03030"};
  for (int k = 0; k < 2; ++k) {
    ChartSeries s;
    s.label = to_string(kinds[k]) + " (numeric)";
    s.color = colors[k];
    for (const auto& r : rows)
      if (r.model == kinds[k] && r.error.empty())
        s.points.emplace_back(r.gamma_t, r.p3_final);
    chart.series.push_back(std::move(s));
  }
  if (analytic) {
    const bool same_for_both = sequence == PulseSequence::Intuitive;
    for (int k = 0; k < (same_for_both ? 1 : 2); ++k) {
      ChartSeries s;
      s.label = same_for_both ? "weak-damping formula"
                              : to_string(kinds[k]) + " (weak damping)";
      s.color = colors[k];
      s.dashed = true;
      for (const auto& r : rows)
        if (r.model == kinds[k] && r.p3_analytic)
          s.points.emplace_back(r.gamma_t, *r.p3_analytic);
      chart.series.push_back(std::move(s));
    }
  }

  const std::string prefix =
      spec.out_prefix.empty() ? figure_name(spec.id) : spec.out_prefix;
  return finish_chart(prefix, chart, sweep_csv(rows, analytic));
}

FigureOutput render_trace_figure(const FigureSpec& spec, ModelKind model,
                                 PulseSequence sequence, bool variant_overridden) {
  PulseConfig cfg;
  cfg.alpha_t = spec.alpha_t;
  cfg.delta_t = spec.delta_t;
  cfg.sequence = sequence;
  const double gamma = spec.gamma_t / cfg.t_scale;
  const Trajectory traj = propagate(cfg, gamma, model, BasisKind::Bare, spec.sim);

  LineChart chart;
  chart.title = to_string(model) + " model, " + to_string(sequence) +
                " ordering, Gamma T = " + format_sig(spec.gamma_t);
  chart.x_label = "t / T";
  chart.y_label = "population";
  const char* colors[3] = {"#c03030", "#2e8540", "#1f4e9c"};
  const std::vector<double>* cols[3] = {&traj.p1, &traj.p2, &traj.p3};
  const char* labels[3] = {"p1", "p2", "p3"};
  for (int k = 0; k < 3; ++k) {
    ChartSeries s;
    s.label = labels[k];
    s.color = colors[k];
    s.dashed = k == 1;
    for (std::size_t i = 0; i < traj.times.size(); ++i)
      s.points.emplace_back(traj.times[i], (*cols[k])[i]);
    chart.series.push_back(std::move(s));
  }

  std::string prefix = spec.out_prefix;
  if (prefix.empty()) {
    prefix = figure_name(spec.id);
    if (variant_overridden)
      prefix += "_" + to_string(model) + "-" + to_string(sequence);
  }

  std::string csv = "t_over_T,p1,p2,p3,norm\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    csv += format_sig(traj.times[i]);
    csv += ',';
    csv += format_sig(traj.p1[i]);
    csv += ',';
    csv += format_sig(traj.p2[i]);
    csv += ',';
    csv += format_sig(traj.p3[i]);
    csv += ',';
    csv += format_sig(traj.norm[i]);
    csv += '\n';
  }
  return finish_chart(prefix, chart, csv);
}

}  // namespace

FigureOutput render_figure(const FigureSpec& spec) {
  spec.sim.validate();
  switch (spec.id) {
    case FigureId::Fig2:
      return render_sweep_figure(spec, PulseSequence::Intuitive, false, true);
    case FigureId::Fig3a:
      return render_sweep_figure(spec, PulseSequence::Counterintuitive, false, true);
    case FigureId::Fig3b:
      return render_sweep_figure(spec, PulseSequence::Counterintuitive, true, false);
    case FigureId::Fig4a:
    case FigureId::Fig4b: {
      ModelKind model = spec.id == FigureId::Fig4a ? ModelKind::Effective
                                                   : ModelKind::Phenomenological;
      PulseSequence seq = spec.id == FigureId::Fig4a
                              ? PulseSequence::Intuitive
                              : PulseSequence::Counterintuitive;
      bool overridden = false;
      if (!spec.variant.empty()) {
        std::tie(model, seq) = parse_variant(spec.variant);
        overridden = true;
      }
      return render_trace_figure(spec, model, seq, overridden);
    }
  }
  throw std::invalid_argument("unknown figure id");
}

}  // namespace stirap
