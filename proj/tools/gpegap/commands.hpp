#pragma once

#include <string>
#include <vector>

#include "common.hpp"

namespace cli {

struct SolveArgs {
  ProblemOptions problem;
  SolverOptions solver;
  double beta = 0.0;
  std::string excited = "ground";
  std::string output;
  std::string field;
  bool history = false;
  bool timing = false;
};

struct BetaArgs {
  std::vector<double> betas;
  double beta_min = 0.01;
  double beta_max = 1000.0;
  int beta_count = 13;
  bool no_zero = false;

  std::vector<double> resolve() const;
};

struct SweepArgs {
  ProblemOptions problem;
  SolverOptions solver;
  BetaArgs beta;
  std::string excited = "default";
  int jobs = 1;
  std::string csv;
  std::string json_path;
  double slack = 0.0;
  double weak_window = 1.0;
  bool compare = false;
  double fit_min = 0.0;
  double fit_max = 0.0;
  bool timing = false;
};

struct AsymArgs {
  std::string problem_class;
  std::vector<double> lengths;
  std::vector<double> gamma;
  std::vector<double> beta{0.0};
  std::string regime = "auto";
  bool higher_order = false;
  std::string degenerate = "auto";
  double weak_max = 1.0;
  double strong_min = 1.0;
  bool force = false;
  std::string json_path;
};

struct FigureArgs {
  std::string recipe;
  std::string out = ".";
  int jobs = 1;
  bool timing = false;
};

int cmd_solve(const SolveArgs& args);
int cmd_gap_sweep(const SweepArgs& args);
int cmd_asym(const AsymArgs& args);
int cmd_figure(const FigureArgs& args);

std::vector<std::string> figure_recipes();

/// Rows, bounds and conjecture check of a finished sweep.
json sweep_report(gpegap_sweep* sweep, const gpegap_problem* problem, double slack,
                  double weak_window, bool timing);
std::string sweep_csv(const gpegap_sweep* sweep);

}  // namespace cli
