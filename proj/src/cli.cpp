#include "stirap/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "stirap/analysis.hpp"
#include "stirap/experiments.hpp"
#include "stirap/io.hpp"
#include "stirap/lindblad.hpp"
#include "stirap/names.hpp"
#include "stirap/propagator.hpp"

namespace stirap {
namespace {

using nlohmann::json;

struct Args {
  std::string model = "effective";
  std::string sequence = "counterintuitive";
  std::string basis = "bare";
  double alpha_t = 10.0;
  double delta_t = 1.0;
  double gamma_t = 0.0;
  double tmax_t = 10.0;
  int samples = 2001;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.0;
  std::string out;

  double n_plus = 0.0;
  double n_minus = 0.0;
  double omega4_t = 0.0;

  double gamma_min = 0.0;
  double gamma_max = 3.0;
  int sweep_points = 61;
  bool log_grid = false;
  bool analytic = false;
  std::string models = "both";

  bool explain = false;

  std::string figure_id;
  std::string variant;
  int fig_points = 0;
  std::string out_prefix;
  double fig_gamma_t = 500.0;

  std::string config;
};

struct Binding {
  CLI::Option* opt = nullptr;
  std::function<void(const json&)> apply;
};
using BindingMap = std::map<std::string, Binding>;

template <typename T>
void assign_from_json(const json& j, T& var) {
  if constexpr (std::is_same_v<T, bool>) {
    if (!j.is_boolean()) throw std::invalid_argument("expected a boolean");
    var = j.get<bool>();
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!j.is_string()) throw std::invalid_argument("expected a string");
    var = j.get<std::string>();
  } else if constexpr (std::is_same_v<T, int>) {
    if (!j.is_number_integer()) throw std::invalid_argument("expected an integer");
    var = j.get<int>();
  } else {
    if (!j.is_number()) throw std::invalid_argument("expected a number");
    var = j.get<double>();
  }
}

// Loads a flat JSON object and assigns every recognized key whose flag was
// not given on the command line (flags win). Keys are the long option names
// without the leading dashes. Returns 0 or the exit status 2.
int apply_config_file(const std::string& path, const BindingMap& bindings,
                      std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "config error: cannot open '" << path << "'\n";
    return 2;
  }
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    err << "config error: " << path << ": " << e.what() << "\n";
    return 2;
  }
  if (!doc.is_object()) {
    err << "config error: " << path << ": top level must be a JSON object\n";
    return 2;
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const auto found = bindings.find(it.key());
    if (found == bindings.end()) continue;  // key not used by this subcommand
    const Binding& b = found->second;
    if (b.opt->count() > 0) continue;  // command-line flag overrides config
    try {
      b.apply(it.value());
    } catch (const std::exception& e) {
      err << "config error: key '" << it.key() << "': " << e.what() << "\n";
      return 2;
    }
  }
  return 0;
}

std::vector<double> make_grid(double lo, double hi, int n, bool log_grid) {
  if (n < 2) throw std::invalid_argument("sweep needs at least 2 grid points");
  if (!(hi > lo)) throw std::invalid_argument("gamma-max must exceed gamma-min");
  std::vector<double> g(n);
  if (log_grid) {
    if (!(lo > 0))
      throw std::invalid_argument("a log grid requires gamma-min > 0");
    const double l0 = std::log10(lo), l1 = std::log10(hi);
    for (int i = 0; i < n; ++i)
      g[i] = std::pow(10.0, l0 + (l1 - l0) * i / (n - 1));
  } else {
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  }
  return g;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  Args a;
  std::map<const CLI::App*, BindingMap> bindings;

  CLI::App app{
      "Open three-level STIRAP simulator: cross-validated non-Hermitian "
      "dissipation models, a four-level master equation, damping sweeps, "
      "weak-damping analytics, strong-damping outcomes, and bundled figures.",
      "stirap"};
  app.require_subcommand(1);
  app.failure_message([](const CLI::App*, const CLI::Error& e) {
    return std::string("error: ") + e.what() + "\n";
  });
  app.footer(
      "All physical inputs are dimensionless products (alphaT, deltaT, gammaT,\n"
      "omega4T, tmaxT, and times in units of T). Every subcommand accepts\n"
      "--config <file>: a flat JSON object whose keys are the long option\n"
      "names without dashes (e.g. {\"alphaT\": 20, \"rel-tol\": 1e-8});\n"
      "command-line flags override config values, and keys a subcommand does\n"
      "not define are ignored. STIRAP_WORKERS bounds the sweep worker count\n"
      "(default: available parallelism). Exit status: 0 success, 2 bad flags\n"
      "or parameter values, 1 runtime failure.");

  const auto bind = [&bindings](CLI::App* sub, CLI::Option* opt, auto& var) {
    const auto& lnames = opt->get_lnames();
    if (lnames.empty()) return opt;
    bindings[sub][lnames.front()] = {
        opt, [&var](const json& j) { assign_from_json(j, var); }};
    return opt;
  };

  const auto add_model = [&](CLI::App* sub) {
    bind(sub,
         sub->add_option("--model", a.model,
                         "dissipation model: effective | phenomenological")
             ->capture_default_str()
             ->check(CLI::IsMember({"effective", "phenomenological"})),
         a.model);
  };
  const auto add_sequence = [&](CLI::App* sub) {
    bind(sub,
         sub->add_option("--sequence", a.sequence,
                         "pulse ordering: counterintuitive | intuitive")
             ->capture_default_str()
             ->check(CLI::IsMember({"intuitive", "counterintuitive"})),
         a.sequence);
  };
  const auto add_pulse = [&](CLI::App* sub) {
    bind(sub,
         sub->add_option("--alphaT", a.alpha_t,
                         "pulse area parameter alpha*T (dimensionless)")
             ->capture_default_str(),
         a.alpha_t);
    bind(sub,
         sub->add_option("--deltaT", a.delta_t,
                         "single-photon detuning Delta*T (dimensionless)")
             ->capture_default_str(),
         a.delta_t);
    bind(sub,
         sub->add_option("--tmaxT", a.tmax_t,
                         "half-width of the time window, in units of T")
             ->capture_default_str(),
         a.tmax_t);
  };
  const auto add_gamma = [&](CLI::App* sub) {
    bind(sub,
         sub->add_option("--gammaT", a.gamma_t,
                         "damping rate Gamma*T (dimensionless)")
             ->capture_default_str(),
         a.gamma_t);
  };
  const auto add_sim = [&](CLI::App* sub) {
    bind(sub,
         sub->add_option("--samples", a.samples,
                         "number of uniform output samples over the window")
             ->capture_default_str(),
         a.samples);
    bind(sub,
         sub->add_option("--rel-tol", a.rel_tol,
                         "integrator relative tolerance")
             ->capture_default_str(),
         a.rel_tol);
    bind(sub,
         sub->add_option("--abs-tol", a.abs_tol,
                         "integrator absolute tolerance")
             ->capture_default_str(),
         a.abs_tol);
    bind(sub,
         sub->add_option("--max-step", a.max_step,
                         "maximum integrator step in units of T (0 = none)")
             ->capture_default_str(),
         a.max_step);
  };
  const auto add_out = [&](CLI::App* sub, const char* desc) {
    bind(sub, sub->add_option("--out", a.out, desc), a.out);
  };
  const auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", a.config,
                    "JSON config file; flags given here override its values");
  };

  CLI::App* simulate = app.add_subcommand(
      "simulate",
      "propagate the three-level amplitudes for one parameter set");
  add_model(simulate);
  add_sequence(simulate);
  bind(simulate,
       simulate
           ->add_option("--basis", a.basis,
                        "propagation basis: bare | adiabatic")
           ->capture_default_str()
           ->check(CLI::IsMember({"bare", "adiabatic"})),
       a.basis);
  add_pulse(simulate);
  add_gamma(simulate);
  add_sim(simulate);
  add_out(simulate, "write the trajectory CSV (t_over_T,p1,p2,p3,norm) here");
  add_config(simulate);

  CLI::App* master = app.add_subcommand(
      "master",
      "propagate the four-level master equation (three levels plus sink)");
  add_sequence(master);
  add_pulse(master);
  add_gamma(master);
  bind(master,
       master
           ->add_option("--nplus", a.n_plus,
                        "thermal occupation at the upper dressed transition")
           ->capture_default_str(),
       a.n_plus);
  bind(master,
       master
           ->add_option("--nminus", a.n_minus,
                        "thermal occupation at the lower dressed transition")
           ->capture_default_str(),
       a.n_minus);
  bind(master,
       master
           ->add_option("--omega4T", a.omega4_t,
                        "sink level energy omega4*T (dimensionless)")
           ->capture_default_str(),
       a.omega4_t);
  add_sim(master);
  add_out(master, "write the trajectory CSV (t_over_T,p1,p2,p3,p4,trace) here");
  add_config(master);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "scan the damping rate and tabulate the final populations");
  add_sequence(sweep);
  add_pulse(sweep);
  bind(sweep,
       sweep->add_option("--gamma-min", a.gamma_min, "smallest Gamma*T")
           ->capture_default_str(),
       a.gamma_min);
  bind(sweep,
       sweep->add_option("--gamma-max", a.gamma_max, "largest Gamma*T")
           ->capture_default_str(),
       a.gamma_max);
  bind(sweep,
       sweep->add_option("--points", a.sweep_points, "number of grid points")
           ->capture_default_str(),
       a.sweep_points);
  bind(sweep,
       sweep->add_flag("--log", a.log_grid,
                       "space the grid logarithmically (gamma-min > 0)"),
       a.log_grid);
  bind(sweep,
       sweep->add_flag("--analytic", a.analytic,
                       "append the weak-damping p3 column"),
       a.analytic);
  bind(sweep,
       sweep
           ->add_option("--models", a.models,
                        "which models to run: effective | phenomenological | both")
           ->capture_default_str()
           ->check(CLI::IsMember({"effective", "phenomenological", "both"})),
       a.models);
  add_sim(sweep);
  add_out(sweep, "write the sweep CSV here (default: print to stdout)");
  add_config(sweep);

  CLI::App* analytic = app.add_subcommand(
      "analytic", "print the weak-damping transfer efficiency p3");
  add_model(analytic);
  add_sequence(analytic);
  add_pulse(analytic);
  add_gamma(analytic);
  add_config(analytic);

  CLI::App* zeno = app.add_subcommand(
      "zeno", "print the strong-damping (Gamma >> alpha) asymptotic outcome");
  add_model(zeno);
  add_sequence(zeno);
  bind(zeno,
       zeno->add_flag("--explain", a.explain,
                      "also print the mechanism behind the outcome"),
       a.explain);
  add_config(zeno);

  CLI::App* figure = app.add_subcommand(
      "figure", "render a bundled figure: data CSV plus a standalone SVG");
  figure
      ->add_option("id", a.figure_id,
                   "fig2: final transfer vs damping, intuitive ordering; "
                   "fig3a: same, counterintuitive; fig3b: counterintuitive on "
                   "a log damping grid; fig4/fig4a/fig4b: population traces "
                   "at strong damping")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3a", "fig3b", "fig4", "fig4a", "fig4b"}));
  bind(figure,
       figure
           ->add_option("--variant", a.variant,
                        "time-trace variant <model>-<sequence> (required for "
                        "fig4; optional override for fig4a/fig4b)"),
       a.variant);
  bind(figure,
       figure
           ->add_option("--points", a.fig_points,
                        "sweep grid points (0 = the figure's default)")
           ->capture_default_str(),
       a.fig_points);
  bind(figure,
       figure->add_option("--out-prefix", a.out_prefix,
                          "output path prefix (default: the figure name)"),
       a.out_prefix);
  bind(figure,
       figure->add_option("--alphaT", a.alpha_t, "pulse area parameter alpha*T")
           ->capture_default_str(),
       a.alpha_t);
  bind(figure,
       figure->add_option("--deltaT", a.delta_t, "single-photon detuning Delta*T")
           ->capture_default_str(),
       a.delta_t);
  bind(figure,
       figure
           ->add_option("--gammaT", a.fig_gamma_t,
                        "damping rate Gamma*T (time-trace figures only)")
           ->capture_default_str(),
       a.fig_gamma_t);
  add_sim(figure);
  add_config(figure);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (!a.config.empty()) {
    const int rc = apply_config_file(a.config, bindings[sub], err);
    if (rc != 0) return rc;
  }

  // Echoed with runtime failures so a failing parameter set is reproducible.
  std::string params;
  const auto echo = [&params](const std::string& key, const std::string& value) {
    if (!params.empty()) params += ' ';
    params += key + "=" + value;
  };

  try {
    SimOptions sim;
    sim.rel_tol = a.rel_tol;
    sim.abs_tol = a.abs_tol;
    sim.max_step = a.max_step;
    sim.sampling = a.samples;

    PulseConfig cfg;
    cfg.alpha_t = a.alpha_t;
    cfg.t_scale = 1.0;
    cfg.delta_t = a.delta_t;
    cfg.t_max_over_t = a.tmax_t;

    if (sub == simulate) {
      cfg.sequence = sequence_from_string(a.sequence);
      const ModelKind model = model_from_string(a.model);
      const BasisKind basis = basis_from_string(a.basis);
      echo("model", a.model);
      echo("sequence", a.sequence);
      echo("basis", a.basis);
      echo("alphaT", format_sig(a.alpha_t));
      echo("deltaT", format_sig(a.delta_t));
      echo("gammaT", format_sig(a.gamma_t));
      echo("tmaxT", format_sig(a.tmax_t));
      cfg.validate();
      sim.validate();

      const Trajectory traj = propagate(cfg, a.gamma_t, model, basis, sim);
      if (!a.out.empty()) traj.write_csv(a.out);
      out << "p1_final=" << format_sig(traj.p1_final)
          << " p2_final=" << format_sig(traj.p2_final)
          << " p3_final=" << format_sig(traj.p3_final)
          << " norm_final=" << format_sig(traj.norm_final) << "\n";
      if (!a.out.empty()) out << "wrote " << a.out << "\n";
    } else if (sub == master) {
      cfg.sequence = sequence_from_string(a.sequence);
      ReservoirSpec res;
      res.gamma = a.gamma_t;
      res.n_plus = a.n_plus;
      res.n_minus = a.n_minus;
      res.omega4 = a.omega4_t;
      echo("sequence", a.sequence);
      echo("alphaT", format_sig(a.alpha_t));
      echo("deltaT", format_sig(a.delta_t));
      echo("gammaT", format_sig(a.gamma_t));
      echo("nplus", format_sig(a.n_plus));
      echo("nminus", format_sig(a.n_minus));
      echo("omega4T", format_sig(a.omega4_t));
      echo("tmaxT", format_sig(a.tmax_t));
      cfg.validate();
      res.validate();
      sim.validate();

      const MasterTrajectory traj = propagate_master(cfg, res, sim);
      if (!a.out.empty()) traj.write_csv(a.out);
      out << "p1_final=" << format_sig(traj.p1_final)
          << " p2_final=" << format_sig(traj.p2_final)
          << " p3_final=" << format_sig(traj.p3_final)
          << " p4_final=" << format_sig(traj.p4_final)
          << " trace_final=" << format_sig(traj.trace_final) << "\n";
      if (!a.out.empty()) out << "wrote " << a.out << "\n";
    } else if (sub == sweep) {
      SweepSpec spec;
      spec.cfg = cfg;
      spec.cfg.sequence = sequence_from_string(a.sequence);
      spec.include_analytic = a.analytic;
      spec.output_path = a.out;
      spec.sim = sim;
      if (a.models == "both")
        spec.models = {ModelKind::Effective, ModelKind::Phenomenological};
      else
        spec.models = {model_from_string(a.models)};
      spec.gamma_grid =
          make_grid(a.gamma_min, a.gamma_max, a.sweep_points, a.log_grid);
      echo("sequence", a.sequence);
      echo("alphaT", format_sig(a.alpha_t));
      echo("deltaT", format_sig(a.delta_t));
      echo("gamma-min", format_sig(a.gamma_min));
      echo("gamma-max", format_sig(a.gamma_max));
      echo("points", std::to_string(a.sweep_points));
      echo("models", a.models);
      spec.validate();

      const std::vector<SweepRow> rows = sweep_gamma(spec);
      std::size_t failed = 0;
      for (const SweepRow& r : rows)
        if (!r.error.empty()) ++failed;
      if (a.out.empty())
        out << sweep_csv(rows, a.analytic);
      else
        out << "wrote " << a.out << " (" << rows.size() << " rows)\n";
      if (failed > 0)
        err << "warning: " << failed << " of " << rows.size()
            << " rows failed; see the error column\n";
    } else if (sub == analytic) {
      cfg.sequence = sequence_from_string(a.sequence);
      const ModelKind model = model_from_string(a.model);
      echo("model", a.model);
      echo("sequence", a.sequence);
      echo("alphaT", format_sig(a.alpha_t));
      echo("deltaT", format_sig(a.delta_t));
      echo("gammaT", format_sig(a.gamma_t));
      echo("tmaxT", format_sig(a.tmax_t));
      cfg.validate();
      out << format_sig(weak_damping_p3(cfg, a.gamma_t, model)) << "\n";
    } else if (sub == zeno) {
      const ModelKind model = model_from_string(a.model);
      const PulseSequence seq = sequence_from_string(a.sequence);
      echo("model", a.model);
      echo("sequence", a.sequence);
      const ZenoPrediction pred = zeno_predict(model, seq);
      out << to_string(pred.outcome) << "\n";
      if (a.explain) out << pred.rationale << "\n";
    } else if (sub == figure) {
      FigureSpec spec;
      spec.alpha_t = a.alpha_t;
      spec.delta_t = a.delta_t;
      spec.gamma_t = a.fig_gamma_t;
      spec.variant = a.variant;
      spec.points = a.fig_points;
      spec.out_prefix = a.out_prefix;
      spec.sim = sim;
      if (a.figure_id == "fig2") {
        spec.id = FigureId::Fig2;
      } else if (a.figure_id == "fig3a") {
        spec.id = FigureId::Fig3a;
      } else if (a.figure_id == "fig3b") {
        spec.id = FigureId::Fig3b;
      } else if (a.figure_id == "fig4a") {
        spec.id = FigureId::Fig4a;
      } else if (a.figure_id == "fig4b") {
        spec.id = FigureId::Fig4b;
      } else {  // fig4: a bare trace figure, fully specified by --variant
        if (a.variant.empty())
          throw std::invalid_argument(
              "figure fig4 requires --variant <model>-<sequence>");
        spec.id = FigureId::Fig4a;
        if (spec.out_prefix.empty()) spec.out_prefix = "fig4_" + a.variant;
      }
      echo("id", a.figure_id);
      if (!a.variant.empty()) echo("variant", a.variant);
      echo("alphaT", format_sig(a.alpha_t));
      echo("deltaT", format_sig(a.delta_t));
      echo("gammaT", format_sig(a.fig_gamma_t));

      const FigureOutput files = render_figure(spec);
      out << "wrote " << files.csv_path << "\n";
      out << "wrote " << files.svg_path << "\n";
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << " [" << params << "]\n";
    return 1;
  }
  return 0;
}

}  // namespace stirap
