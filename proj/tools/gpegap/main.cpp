#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using cli::ProblemOptions;
using cli::SolverOptions;

void add_problem_options(CLI::App* app, ProblemOptions& p) {
  app->add_option("--bc", p.bc, "dirichlet, neumann, periodic or whole-space")
      ->check(CLI::IsMember({"dirichlet", "neumann", "periodic", "whole-space"}))
      ->capture_default_str();
  app->add_option("--lengths", p.lengths, "box side lengths L_1 .. L_d")->delimiter(',')->capture_default_str();
  app->add_option("--gamma", p.gamma, "trap frequencies gamma_1 .. gamma_d")->delimiter(',');
  app->add_option("--potential", p.potential,
                  "auto, zero, harmonic, harmonic-cosine, shifted-quadratic, "
                  "negative-quadratic, sine or tabulated")
      ->capture_default_str();
  app->add_option("--v0", p.v0, "amplitude for harmonic-cosine and shifted-quadratic")
      ->capture_default_str();
  app->add_option("--k", p.k, "wave number for harmonic-cosine and sine")->capture_default_str();
  app->add_option("--coef", p.coef, "coefficient of negative-quadratic")->capture_default_str();
  app->add_option("--amplitude", p.amplitude, "amplitude of sine")->capture_default_str();
  app->add_option("--shift", p.shift, "shift of sine")->capture_default_str();
  app->add_option("--center", p.center, "center of shifted-quadratic (default: box center)")->delimiter(',');
  app->add_option("--potential-file", p.potential_file, "node values for tabulated");
  app->add_option("--n", p.n, "nodes per axis (one value or one per axis)")->delimiter(',');
  app->add_option("--truncation-beta", p.beta_max,
                  "largest beta the whole-space truncation box must hold")
      ->capture_default_str();
  app->add_option("--degenerate", p.degenerate, "auto, yes or no")->capture_default_str();
  app->add_option("--convex", p.convex, "declare the potential convex: auto, yes or no")
      ->capture_default_str();
  app->add_option("--gamma-v", p.gamma_v, "declared convexity modulus (negative: automatic)")
      ->capture_default_str();
}

void add_solver_options(CLI::App* app, SolverOptions& s) {
  auto& r = s.raw;
  app->add_option("--tau", r.tau, "time step (0: adaptive)")->capture_default_str();
  app->add_option("--tau-min", r.tau_min, "floor of the adaptive time step")
      ->capture_default_str();
  app->add_option("--stop-tol", r.stop_tol, "stop when max|dphi|/tau falls below")
      ->capture_default_str();
  app->add_option("--residual-tol", r.residual_tol, "eigen-residual needed for convergence")
      ->capture_default_str();
  app->add_option("--max-iter", r.max_iter, "gradient-flow iteration cap")->capture_default_str();
  app->add_option("--linear-tol", r.linear_tol, "relative tolerance of the linear solves")
      ->capture_default_str();
  app->add_option("--linear-max-iter", r.linear_max_iter, "iteration cap of the linear solves")
      ->capture_default_str();
  app->add_option("--symmetry-tol", r.symmetry_tol, "largest tolerated symmetry drift")
      ->capture_default_str();
  app->add_option("--perturbation", r.perturbation, "relative noise on the initial guess")
      ->capture_default_str();
  app->add_option("--seed", r.seed, "seed of the initial-guess noise")->capture_default_str();
}

void add_beta_options(CLI::App* app, cli::BetaArgs& b) {
  app->add_option("--betas", b.betas, "explicit ascending beta list")->delimiter(',');
  app->add_option("--beta-min", b.beta_min, "smallest positive beta of the log grid")
      ->capture_default_str();
  app->add_option("--beta-max", b.beta_max, "largest beta of the log grid")->capture_default_str();
  app->add_option("--beta-count", b.beta_count, "points of the log grid")->capture_default_str();
  app->add_flag("--no-zero", b.no_zero, "do not prepend beta = 0");
}

void add_config(CLI::App* app) {
  app->fallthrough();
}

}  // namespace

int main(int argc, char** argv) {
  cli::init_logging();
  CLI::App app{"Ground and first excited states of the Gross-Pitaevskii equation, and their gaps"};
  app.set_version_flag("--version", std::string(gpegap_version()));
  app.require_subcommand(1);
  app.set_config("--config", "", "INI file, one [subcommand] section; command-line flags win");
  auto* dump = app.add_flag("--dump-config", "print the effective configuration and exit")
                   ->configurable(false);
  app.get_config_ptr()->configurable(false);

  cli::SolveArgs solve;
  auto* s = app.add_subcommand("solve", "compute one ground or excited state");
  add_config(s);
  add_problem_options(s, solve.problem);
  add_solver_options(s, solve.solver);
  s->add_option("--beta", solve.beta, "interaction strength")->capture_default_str();
  s->add_option("--excited", solve.excited, "ground, odd, vortex, branch or default")
      ->capture_default_str();
  s->add_option("-o,--output", solve.output, "report JSON (default: stdout)");
  s->add_option("--field", solve.field, "write the state as raw float64 plus a .hdr sidecar");
  s->add_flag("--history", solve.history, "include the energy history in the report");
  s->add_flag("--timing", solve.timing, "include wall-clock time");

  cli::SweepArgs sweep;
  auto* g = app.add_subcommand("gap-sweep", "ground and first excited states across beta");
  add_config(g);
  add_problem_options(g, sweep.problem);
  add_solver_options(g, sweep.solver);
  add_beta_options(g, sweep.beta);
  g->add_option("--excited", sweep.excited, "odd, vortex, branch or default")
      ->capture_default_str();
  g->add_option("-j,--jobs", sweep.jobs, "worker threads (1: deterministic, sequential)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  g->add_option("--csv", sweep.csv, "CSV output (default: stdout)");
  g->add_option("--json", sweep.json_path, "companion JSON (default: next to the CSV)");
  g->add_option("--slack", sweep.slack, "tolerated negative conjecture margin")
      ->capture_default_str();
  g->add_option("--weak-window", sweep.weak_window, "beta window for the fitted C")
      ->capture_default_str();
  g->add_flag("--compare", sweep.compare, "compare against the closed-form asymptotics");
  g->add_option("--fit-min", sweep.fit_min, "lower beta of the logarithmic slope fit")
      ->capture_default_str();
  g->add_option("--fit-max", sweep.fit_max, "upper beta of the fit (0: none)")
      ->capture_default_str();
  g->add_flag("--timing", sweep.timing, "include wall-clock times in the JSON");

  cli::AsymArgs asym;
  auto* a = app.add_subcommand("asym", "closed-form weak and strong interaction asymptotics");
  add_config(a);
  a->add_option("class", asym.problem_class, "box, harmonic, periodic or neumann")->required();
  a->add_option("--lengths", asym.lengths, "box side lengths")->delimiter(',');
  a->add_option("--gamma", asym.gamma, "trap frequencies")->delimiter(',');
  a->add_option("--beta", asym.beta, "one or more interaction strengths")->delimiter(',')->capture_default_str();
  a->add_option("--regime", asym.regime, "auto, weak or strong")->capture_default_str();
  a->add_flag("--higher-order", asym.higher_order, "next-order term of the strong trap gap");
  a->add_option("--degenerate", asym.degenerate, "auto, yes or no")->capture_default_str();
  a->add_option("--weak-max", asym.weak_max, "largest beta of the weak regime")
      ->capture_default_str();
  a->add_option("--strong-min", asym.strong_min, "smallest beta of the strong regime")
      ->capture_default_str();
  a->add_flag("--force", asym.force, "evaluate outside the regime window");
  a->add_option("--json", asym.json_path, "also write JSON");

  cli::FigureArgs fig;
  auto* f = app.add_subcommand("figure", "plot data for the gap figures");
  add_config(f);
  std::string recipes;
  for (const auto& r : cli::figure_recipes()) recipes += (recipes.empty() ? "" : ", ") + r;
  f->add_option("recipe", fig.recipe, recipes)->required();
  f->add_option("--out", fig.out, "output directory")->capture_default_str();
  f->add_option("-j,--jobs", fig.jobs, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  f->add_flag("--timing", fig.timing, "include wall-clock times in the manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kConfig;
  }

  if (dump->count() > 0) {
    for (auto* sub : app.get_subcommands()) {
      std::cout << '[' << sub->get_name() << "]\n" << sub->config_to_str(false, false);
    }
    return 0;
  }
  try {
    if (s->parsed()) return cli::cmd_solve(solve);
    if (g->parsed()) return cli::cmd_gap_sweep(sweep);
    if (a->parsed()) return cli::cmd_asym(asym);
    if (f->parsed()) return cli::cmd_figure(fig);
  } catch (const cli::Failure& e) {
    cli::log(cli::Level::Error, e.what());
    return e.code;
  } catch (const std::exception& e) {
    cli::log(cli::Level::Error, e.what());
    return cli::kInternal;
  }
  return cli::kInternal;
}
