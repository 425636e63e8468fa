#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>

#include "commands.hpp"

namespace cli {

namespace {

struct Series {
  std::string name;
  std::string description;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Figure {
  std::string recipe;
  std::vector<Series> series;
  json sweeps = json::array();
  bool partial = false;
};

struct SweepSpec {
  std::string label;
  ProblemOptions problem;
  std::vector<double> betas;
  std::string mode;
};

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(lo + (hi - lo) * k / (count - 1));
  return out;
}

Sweep run(Figure& fig, const SweepSpec& spec, const FigureArgs& args, Problem& problem_out) {
  problem_out = build_problem(spec.problem);
  SolverOptions solver;
  solver.raw.record_history = 0;
  const auto t0 = std::chrono::steady_clock::now();
  gpegap_sweep* raw = nullptr;
  const gpegap_status st =
      gpegap_gap_sweep(problem_out.get(), spec.betas.data(), spec.betas.size(),
                       parse_mode(spec.mode), &solver.raw, args.jobs, &raw);
  if (!raw) check(st, spec.label);
  Sweep sweep(raw);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  log(Level::Info, spec.label + ": " + std::to_string(spec.betas.size()) + " rows in " +
                       format_double(secs) + " s");
  if (st == GPEGAP_PARTIAL_FAILURE) {
    fig.partial = true;
    log(Level::Warn, spec.label + ": some rows failed");
  }
  json j = sweep_report(sweep.get(), problem_out.get(), 0.0, 1.0, args.timing);
  j["label"] = spec.label;
  if (args.timing) j["seconds"] = secs;
  fig.sweeps.push_back(std::move(j));
  return sweep;
}

Series numeric_series(const std::string& name, const std::string& description,
                      const gpegap_sweep* sweep) {
  Series s{name, description, {"beta", "delta_E", "delta_mu", "E_1", "mu_1"}, {}};
  for (std::size_t k = 0; k < gpegap_sweep_size(sweep); ++k) {
    gpegap_gap_row r;
    check(gpegap_sweep_row(sweep, k, &r), "sweep row");
    if (r.status != GPEGAP_ROW_OK) continue;
    s.rows.push_back({r.beta, r.delta_E, r.delta_mu, r.E_1, r.mu_1});
  }
  return s;
}

Series asym_series(const std::string& name, const std::string& description,
                   gpegap_asym_query q, const std::vector<double>& betas) {
  Series s{name, description, {"beta", "delta_E", "delta_mu"}, {}};
  for (double b : betas) {
    q.beta = b;
    gpegap_asym_values v;
    check(gpegap_asym_evaluate(&q, &v), name);
    s.rows.push_back({b, v.delta_E, v.delta_mu});
  }
  return s;
}

Series bound_series(const std::string& name, const std::string& description,
                    const gpegap_sweep* sweep, const std::vector<double>& betas) {
  Series s{name, description, {"beta", "bound_E", "bound_mu"}, {}};
  for (double b : betas) {
    s.rows.push_back({b, gpegap_bounds_stronger_E(sweep, b), gpegap_bounds_stronger_mu(sweep, b)});
  }
  return s;
}

gpegap_asym_query query(gpegap_asym_class cls, std::vector<double> params,
                        gpegap_asym_request regime, bool higher_order = true) {
  gpegap_asym_query q;
  gpegap_asym_query_default(&q);
  q.problem = cls;
  q.dim = static_cast<int>(params.size());
  for (int j = 0; j < q.dim; ++j) q.params[j] = params[j];
  q.regime = regime;
  q.higher_order = higher_order ? 1 : 0;
  return q;
}

ProblemOptions box(std::vector<double> lengths, std::vector<int> n, const std::string& bc) {
  ProblemOptions p;
  p.bc = bc;
  p.lengths = std::move(lengths);
  p.n = std::move(n);
  return p;
}

void ensure_bounds(gpegap_sweep* sweep) {
  gpegap_bounds b;
  check(gpegap_sweep_bounds(sweep, &b), "bounds");
}

void box_1d(Figure& fig, const FigureArgs& args) {
  SweepSpec spec{"box-1d", box({2.0}, {1024}, "dirichlet"), log_betas(0.1, 500.0, 16, true),
                 "odd"};
  Problem p;
  Sweep s = run(fig, spec, args, p);
  ensure_bounds(s.get());
  fig.series.push_back(numeric_series("numeric", "BEFD gap, Omega = (0,2), n = 1024", s.get()));
  fig.series.push_back(asym_series("weak-asym", "weak-interaction expansion with beta^2 term",
                                   query(GPEGAP_ASYM_BOX, {2.0}, GPEGAP_ASYM_WEAK),
                                   linspace(0.0, 20.0, 41)));
  fig.series.push_back(asym_series("strong-asym", "Thomas-Fermi / boundary-layer expansion",
                                   query(GPEGAP_ASYM_BOX, {2.0}, GPEGAP_ASYM_STRONG),
                                   log_betas(5.0, 500.0, 41, false)));
  fig.series.push_back(bound_series("conjecture-bound", "3 pi^2 / 2D^2 with the sqrt(beta) branch",
                                    s.get(), linspace(0.0, 500.0, 101)));
}

void harmonic_1d(Figure& fig, const FigureArgs& args) {
  ProblemOptions po;
  po.bc = "whole-space";
  po.gamma = {1.0};
  po.beta_max = 1000.0;
  po.n = {2048};
  SweepSpec spec{"harmonic-1d", po, log_betas(0.01, 1000.0, 16, true), "odd"};
  Problem p;
  Sweep s = run(fig, spec, args, p);
  ensure_bounds(s.get());
  fig.series.push_back(numeric_series("numeric", "BEFD gap, gamma = 1, truncated box", s.get()));
  fig.series.push_back(asym_series("weak-asym", "weak-interaction expansion",
                                   query(GPEGAP_ASYM_HARMONIC, {1.0}, GPEGAP_ASYM_WEAK),
                                   linspace(0.0, 2.0, 41)));
  fig.series.push_back(asym_series("strong-asym", "Thomas-Fermi expansion with next-order term",
                                   query(GPEGAP_ASYM_HARMONIC, {1.0}, GPEGAP_ASYM_STRONG),
                                   log_betas(1.0, 1000.0, 41, false)));
  fig.series.push_back(bound_series("conjecture-bound", "sqrt(2) gamma_v / 2", s.get(),
                                    log_betas(0.01, 1000.0, 41, true)));
}

void box_2d_degenerate(Figure& fig, const FigureArgs& args) {
  const std::vector<double> betas{0.0, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0, 200.0, 500.0};
  SweepSpec vortex{"box-2d-vortex", box({2.0, 2.0}, {96, 96}, "dirichlet"), betas, "vortex"};
  SweepSpec odd{"box-2d-odd", box({2.0, 2.0}, {96, 96}, "dirichlet"), betas, "odd"};
  Problem pv, po;
  Sweep sv = run(fig, vortex, args, pv);
  Sweep so = run(fig, odd, args, po);
  ensure_bounds(sv.get());
  fig.series.push_back(numeric_series("numeric-vortex", "vortex branch, Omega = (0,2)^2, 96^2",
                                      sv.get()));
  fig.series.push_back(numeric_series("numeric-odd", "odd-in-x1 branch for band ordering",
                                      so.get()));
  fig.series.push_back(asym_series("weak-asym", "degenerate weak-interaction expansion",
                                   query(GPEGAP_ASYM_BOX, {2.0, 2.0}, GPEGAP_ASYM_WEAK),
                                   linspace(0.0, 5.0, 41)));
  fig.series.push_back(asym_series("strong-asym", "leading logarithmic vortex gap",
                                   query(GPEGAP_ASYM_BOX, {2.0, 2.0}, GPEGAP_ASYM_STRONG),
                                   log_betas(10.0, 500.0, 41, false)));
  fig.series.push_back(bound_series("conjecture-bound", "pi^2/2D^2 and 3 pi^2/8D^2", sv.get(),
                                    linspace(0.0, 500.0, 51)));
}

void neumann_1d(Figure& fig, const FigureArgs& args) {
  SweepSpec spec{"neumann-1d", box({2.0}, {1024}, "neumann"), log_betas(0.1, 1000.0, 16, true),
                 "odd"};
  Problem p;
  Sweep s = run(fig, spec, args, p);
  ensure_bounds(s.get());
  fig.series.push_back(numeric_series("numeric", "BEFD gap, Neumann, Omega = (0,2)", s.get()));
  fig.series.push_back(asym_series("weak-asym", "weak-interaction expansion",
                                   query(GPEGAP_ASYM_NEUMANN, {2.0}, GPEGAP_ASYM_WEAK),
                                   linspace(0.0, 5.0, 41)));
  fig.series.push_back(asym_series("strong-asym", "interface-layer expansion",
                                   query(GPEGAP_ASYM_NEUMANN, {2.0}, GPEGAP_ASYM_STRONG),
                                   log_betas(5.0, 1000.0, 41, false)));
  fig.series.push_back(bound_series("conjecture-bound", "pi^2 / 2D^2", s.get(),
                                    linspace(0.0, 1000.0, 51)));
}

void periodic(Figure& fig, const FigureArgs& args) {
  SweepSpec spec{"periodic", box({1.0}, {4096}, "periodic"), {0.0, 1.0, 10.0, 100.0, 1000.0},
                 "default"};
  Problem p;
  Sweep s = run(fig, spec, args, p);
  ensure_bounds(s.get());
  fig.series.push_back(numeric_series("numeric", "BEFD gap, periodic, L = 1, n = 4096", s.get()));
  fig.series.push_back(asym_series("exact", "closed form 2 pi^2 / L^2",
                                   query(GPEGAP_ASYM_PERIODIC, {1.0}, GPEGAP_ASYM_AUTO),
                                   linspace(0.0, 1000.0, 21)));
  fig.series.push_back(bound_series("conjecture-bound", "2 pi^2 / D^2", s.get(),
                                    linspace(0.0, 1000.0, 21)));
}

void nonconvex(Figure& fig, const FigureArgs& args) {
  const auto betas = log_betas(0.1, 1000.0, 16, true);
  ProblemOptions quad = box({2.0}, {1024}, "dirichlet");
  quad.potential = "negative-quadratic";
  quad.coef = -10.0;
  ProblemOptions sine = box({2.0}, {1024}, "dirichlet");
  sine.potential = "sine";
  sine.amplitude = 10.0;
  sine.k = 10.0;
  sine.shift = 1.0;
  Problem pq, ps;
  Sweep sq = run(fig, {"negative-quadratic", quad, betas, "branch"}, args, pq);
  Sweep ss = run(fig, {"sine", sine, betas, "branch"}, args, ps);
  ensure_bounds(sq.get());
  fig.series.push_back(numeric_series("numeric-negative-quadratic", "V = -10 x^2 on (0,2)",
                                      sq.get()));
  fig.series.push_back(numeric_series("numeric-sine", "V = 10 sin(10(x-1)) on (0,2)", ss.get()));
  Series ref{"convex-bound-reference", "3 pi^2 / 2D^2 (stated for convex V only)",
             {"beta", "bound_E", "bound_mu"}, {}};
  gpegap_bounds b;
  check(gpegap_sweep_bounds(sq.get(), &b), "bounds");
  for (double beta : linspace(0.0, 1000.0, 21)) ref.rows.push_back({beta, b.delta_E, b.delta_mu});
  fig.series.push_back(std::move(ref));
}

const std::vector<std::pair<std::string, std::function<void(Figure&, const FigureArgs&)>>>&
recipes() {
  static const std::vector<std::pair<std::string, std::function<void(Figure&, const FigureArgs&)>>>
      table{{"box-1d-gaps", box_1d},
            {"harmonic-1d-gaps", harmonic_1d},
            {"box-2d-degenerate-gaps", box_2d_degenerate},
            {"neumann-1d-gaps", neumann_1d},
            {"periodic-gaps", periodic},
            {"nonconvex-counterexamples", nonconvex}};
  return table;
}

std::string dat_text(const Series& s) {
  std::string out = "# " + s.name + ": " + s.description + "\n#";
  for (const auto& c : s.columns) out += " " + c;
  out += '\n';
  for (const auto& row : s.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ' ';
      out += format_double(row[k]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::vector<std::string> figure_recipes() {
  std::vector<std::string> names;
  for (const auto& r : recipes()) names.push_back(r.first);
  return names;
}

int cmd_figure(const FigureArgs& a) {
  const auto& table = recipes();
  auto it = std::find_if(table.begin(), table.end(),
                         [&](const auto& r) { return r.first == a.recipe; });
  if (it == table.end()) throw Failure(kConfig, "unknown figure recipe '" + a.recipe + "'");

  std::error_code ec;
  std::filesystem::create_directories(a.out, ec);
  if (ec) throw Failure(kConfig, "cannot create '" + a.out + "': " + ec.message());

  Figure fig;
  fig.recipe = a.recipe;
  it->second(fig, a);

  json manifest;
  manifest["gpegap"] = gpegap_version();
  manifest["recipe"] = a.recipe;
  json series = json::array();
  for (const auto& s : fig.series) {
    const std::string file = a.recipe + "_" + s.name + ".dat";
    write_text((std::filesystem::path(a.out) / file).string(), dat_text(s));
    series.push_back({{"name", s.name},
                      {"file", file},
                      {"columns", s.columns},
                      {"points", s.rows.size()},
                      {"description", s.description}});
  }
  manifest["series"] = std::move(series);
  manifest["sweeps"] = std::move(fig.sweeps);
  manifest["complete"] = !fig.partial;
  write_text((std::filesystem::path(a.out) / (a.recipe + ".manifest.json")).string(),
             manifest.dump(2) + "\n");
  return fig.partial ? kPartial : kOk;
}

}  // namespace cli
