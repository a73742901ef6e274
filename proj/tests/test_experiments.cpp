#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "stirap/analysis.hpp"
#include "stirap/experiments.hpp"
#include "stirap/io.hpp"
#include "stirap/propagator.hpp"

using namespace stirap;

namespace {

SweepSpec ci_spec(std::vector<double> grid) {
  SweepSpec spec;
  spec.cfg.alpha_t = 10.0;
  spec.cfg.delta_t = 1.0;
  spec.cfg.sequence = PulseSequence::Counterintuitive;
  spec.gamma_grid = std::move(grid);
  return spec;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CsvTable {
  std::string header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::getline(in, t.header);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    t.rows.push_back(std::move(cells));
  }
  return t;
}

void remove_outputs(const FigureOutput& out) {
  std::remove(out.csv_path.c_str());
  std::remove(out.svg_path.c_str());
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("sweep rows are ordered and reproducible across worker counts") {
  const SweepSpec spec = ci_spec({0.0, 0.5, 1.0});
  const auto rows = sweep_gamma(spec);
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].gamma_t == spec.gamma_grid[i / 2]);
    CHECK(rows[i].model ==
          (i % 2 == 0 ? ModelKind::Effective : ModelKind::Phenomenological));
    CHECK(rows[i].error.empty());
  }
  const std::string reference = sweep_csv(rows, false);
  CHECK(sweep_csv(sweep_gamma(spec), false) == reference);
  setenv("STIRAP_WORKERS", "1", 1);
  CHECK(sweep_worker_count() == 1);
  CHECK(sweep_csv(sweep_gamma(spec), false) == reference);
  setenv("STIRAP_WORKERS", "4", 1);
  CHECK(sweep_worker_count() == 4);
  CHECK(sweep_csv(sweep_gamma(spec), false) == reference);
  unsetenv("STIRAP_WORKERS");
}

TEST_CASE("a sweep row reproduces the standalone propagation") {
  const SweepSpec spec = ci_spec({0.7});
  const auto rows = sweep_gamma(spec);
  REQUIRE(rows.size() == 2);
  const Trajectory eff =
      propagate(spec.cfg, 0.7, ModelKind::Effective, BasisKind::Bare, spec.sim);
  CHECK(std::abs(rows[0].p3_final - eff.p3_final) <= 1e-14);
  CHECK(std::abs(rows[0].p1_final - eff.p1_final) <= 1e-14);
  CHECK(std::abs(rows[0].norm_final - eff.norm_final) <= 1e-14);
}

TEST_CASE("the undamped row cannot tell the models apart") {
  const auto rows = sweep_gamma(ci_spec({0.0}));
  REQUIRE(rows.size() == 2);
  CHECK(std::abs(rows[0].p3_final - rows[1].p3_final) < 1e-10);
  CHECK(std::abs(rows[0].p1_final - rows[1].p1_final) < 1e-10);
  CHECK(std::abs(rows[0].norm_final - rows[1].norm_final) < 1e-10);
}

TEST_CASE("intuitive ordering keeps the two models within two percent") {
  SweepSpec spec = ci_spec({});
  spec.cfg.sequence = PulseSequence::Intuitive;
  spec.include_analytic = true;
  for (int i = 0; i < 61; ++i) spec.gamma_grid.push_back(3.0 * i / 60.0);
  const auto rows = sweep_gamma(spec);
  REQUIRE(rows.size() == 122);
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    REQUIRE(rows[i].model == ModelKind::Effective);
    REQUIRE(rows[i + 1].model == ModelKind::Phenomenological);
    CHECK(std::abs(rows[i].p3_final - rows[i + 1].p3_final) < 0.02);
    REQUIRE(rows[i].p3_analytic.has_value());
    REQUIRE(rows[i + 1].p3_analytic.has_value());
    // Both models share one weak-damping estimate in this ordering.
    CHECK(std::abs(*rows[i].p3_analytic - *rows[i + 1].p3_analytic) < 1e-14);
  }
  const double check = weak_damping_p3(spec.cfg, spec.gamma_grid[20],
                                       ModelKind::Effective);
  CHECK(*rows[40].p3_analytic == doctest::Approx(check).epsilon(1e-12));
}

TEST_CASE("counterintuitive ordering never favors the bare-damping model") {
  SweepSpec spec = ci_spec({});
  for (int i = 0; i <= 12; ++i) spec.gamma_grid.push_back(0.25 * i);
  const auto rows = sweep_gamma(spec);
  for (std::size_t i = 0; i < rows.size(); i += 2)
    CHECK(rows[i].p3_final >= rows[i + 1].p3_final - 1e-6);
}

TEST_CASE("sweep specification validation") {
  CHECK_THROWS_AS(sweep_gamma(ci_spec({})), std::invalid_argument);
  CHECK_THROWS_AS(sweep_gamma(ci_spec({0.5, 0.2})), std::invalid_argument);
  CHECK_THROWS_AS(sweep_gamma(ci_spec({-0.1, 0.2})), std::invalid_argument);
  CHECK_THROWS_AS(sweep_gamma(ci_spec({0.1, 0.1})), std::invalid_argument);
  SweepSpec no_models = ci_spec({0.5});
  no_models.models.clear();
  CHECK_THROWS_AS(sweep_gamma(no_models), std::invalid_argument);
  SweepSpec bad_sim = ci_spec({0.5});
  bad_sim.sim.sampling = 1;
  CHECK_THROWS_AS(sweep_gamma(bad_sim), std::invalid_argument);
}

TEST_CASE("failing rows are reported in place instead of aborting the sweep") {
  SweepSpec spec = ci_spec({0.5});
  spec.models = {ModelKind::Effective};
  spec.sim.rel_tol = 1e-320;  // unreachable accuracy
  spec.sim.abs_tol = 1e-320;
  const auto rows = sweep_gamma(spec);
  REQUIRE(rows.size() == 1);
  CHECK(!rows[0].error.empty());
  CHECK(std::isnan(rows[0].p3_final));
  CHECK(std::isnan(rows[0].norm_final));
  const std::string csv = sweep_csv(rows, false);
  CHECK(csv.find("nan") != std::string::npos);
}

TEST_CASE("sweep CSV formatting") {
  std::vector<SweepRow> rows(1);
  rows[0].gamma_t = 0.5;
  rows[0].model = ModelKind::Phenomenological;
  rows[0].p3_final = 0.123456789012345;
  rows[0].p1_final = 1.0 / 3.0;
  rows[0].norm_final = 1.0;
  CHECK(sweep_csv(rows, false) ==
        "gammaT,model,p3_final,p1_final,norm_final\n"
        "0.5,phenomenological,0.123456789012,0.333333333333,1\n");
  rows[0].p3_analytic = 0.25;
  CHECK(sweep_csv(rows, true) ==
        "gammaT,model,p3_final,p1_final,norm_final,p3_analytic\n"
        "0.5,phenomenological,0.123456789012,0.333333333333,1,0.25\n");
}

TEST_CASE("weak-damping figure: models glued and log-linear tail") {
  FigureSpec spec;
  spec.id = FigureId::Fig2;
  spec.points = 31;
  spec.out_prefix = "tmp_test_fig2";
  const FigureOutput out = render_figure(spec);
  const CsvTable table = parse_csv(slurp(out.csv_path));
  CHECK(table.header == "gammaT,model,p3_final,p1_final,norm_final,p3_analytic");
  REQUIRE(table.rows.size() == 62);
  const std::string svg = slurp(out.svg_path);
  CHECK(svg.find("<svg") != std::string::npos);

  // Transfer decays near-exponentially with damping: on 0.2 <= Gamma T <= 2
  // the log of p3 stays within 3% of the chord through the end points.
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : table.rows)
    if (r[1] == "effective") {
      const double g = std::stod(r[0]);
      if (g >= 0.2 - 1e-9 && g <= 2.0 + 1e-9)
        pts.emplace_back(g, std::log(std::stod(r[2])));
    }
  REQUIRE(pts.size() >= 10);
  const auto [g0, y0] = pts.front();
  const auto [g1, y1] = pts.back();
  for (const auto& [g, y] : pts) {
    const double chord = y0 + (y1 - y0) * (g - g0) / (g1 - g0);
    CHECK(std::abs(y - chord) <= 0.03 * std::abs(chord));
  }
  remove_outputs(out);
}

TEST_CASE("strong-damping sweep figure shows the diverging predictions") {
  FigureSpec spec;
  spec.id = FigureId::Fig3b;
  spec.points = 9;
  spec.out_prefix = "tmp_test_fig3b";
  const FigureOutput out = render_figure(spec);
  const CsvTable table = parse_csv(slurp(out.csv_path));
  CHECK(table.header == "gammaT,model,p3_final,p1_final,norm_final");
  REQUIRE(table.rows.size() == 18);
  double eff_mid = 0, eff_last = 0, phen_first = 0, phen_last = 0;
  for (const auto& r : table.rows) {
    const double g = std::stod(r[0]);
    const double p3 = std::stod(r[2]);
    if (r[1] == "effective") {
      if (std::abs(g - 3.16227766017) < 1e-3) eff_mid = p3;
      if (std::abs(g - 1000.0) < 1e-6) eff_last = p3;
    } else {
      if (std::abs(g - 0.01) < 1e-9) phen_first = p3;
      if (std::abs(g - 1000.0) < 1e-6) phen_last = p3;
    }
  }
  CHECK(eff_last > eff_mid);   // damping freezes out the dark-state leak
  CHECK(eff_last > 0.9);
  CHECK(phen_last < 0.05);     // bare damping kills the transfer entirely
  CHECK(phen_last < phen_first);
  remove_outputs(out);
}

TEST_CASE("counterintuitive sweep figure carries per-model estimates") {
  FigureSpec spec;
  spec.id = FigureId::Fig3a;
  spec.points = 7;
  spec.out_prefix = "tmp_test_fig3a";
  const FigureOutput out = render_figure(spec);
  const CsvTable table = parse_csv(slurp(out.csv_path));
  CHECK(table.header == "gammaT,model,p3_final,p1_final,norm_final,p3_analytic");
  REQUIRE(table.rows.size() == 14);
  // The two models disagree analytically away from Gamma = 0 here.
  double eff_an = 0, phen_an = 0;
  for (const auto& r : table.rows)
    if (std::abs(std::stod(r[0]) - 3.0) < 1e-9) {
      if (r[1] == "effective") eff_an = std::stod(r[5]);
      else phen_an = std::stod(r[5]);
    }
  CHECK(eff_an > phen_an);
  remove_outputs(out);
}

TEST_CASE("strong-damping trace figures match their advertised physics") {
  FigureSpec a;
  a.id = FigureId::Fig4a;  // eigenstate damping, intuitive ordering
  a.out_prefix = "tmp_test_fig4a";
  const FigureOutput out_a = render_figure(a);
  const CsvTable ta = parse_csv(slurp(out_a.csv_path));
  CHECK(ta.header == "t_over_T,p1,p2,p3,norm");
  REQUIRE(!ta.rows.empty());
  CHECK(std::stod(ta.rows.back()[4]) < 0.05);  // total loss
  remove_outputs(out_a);

  FigureSpec b;
  b.id = FigureId::Fig4b;  // bare damping, counterintuitive ordering
  b.out_prefix = "tmp_test_fig4b";
  const FigureOutput out_b = render_figure(b);
  const CsvTable tb = parse_csv(slurp(out_b.csv_path));
  CHECK(tb.header == "t_over_T,p1,p2,p3,norm");
  for (const auto& r : tb.rows) {
    CHECK(std::stod(r[2]) < 0.02);  // p2 essentially zero everywhere
    CHECK(std::stod(r[3]) < 0.02);  // p3 essentially zero everywhere
  }
  CHECK(std::stod(tb.rows.back()[1]) > 0.5);  // population stays in level 1
  remove_outputs(out_b);
}

TEST_CASE("figure rendering is idempotent") {
  FigureSpec spec;
  spec.id = FigureId::Fig4b;
  spec.out_prefix = "tmp_test_fig_idem";
  const FigureOutput first = render_figure(spec);
  const std::string csv1 = slurp(first.csv_path);
  const std::string svg1 = slurp(first.svg_path);
  const FigureOutput second = render_figure(spec);
  CHECK(slurp(second.csv_path) == csv1);
  CHECK(slurp(second.svg_path) == svg1);
  remove_outputs(first);
}

TEST_CASE("trace figure variants are reflected in the output names") {
  FigureSpec spec;
  spec.id = FigureId::Fig4a;
  spec.variant = "phenomenological-counterintuitive";
  const FigureOutput out = render_figure(spec);
  CHECK(out.csv_path ==
        "fig4a_phenomenological-counterintuitive.csv");
  remove_outputs(out);

  FigureSpec bad;
  bad.id = FigureId::Fig4b;
  bad.variant = "nonsense";
  CHECK_THROWS_AS(render_figure(bad), std::invalid_argument);
}

}  // TEST_SUITE
