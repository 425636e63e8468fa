#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpegap/functional.hpp"
#include "gpegap/grid.hpp"
#include "gpegap/potential.hpp"
#include "gpegap/symmetry.hpp"

namespace gpegap {

struct ProblemSpec {
  BoxDomain domain;
  std::vector<int> n;  ///< nodes per axis
  Boundary bc = Boundary::Dirichlet;
  PotentialSpec potential = potential::Zero{};
  double beta = 0.0;
  /// Overrides the automatic L_1 = L_2 (gamma_1 = gamma_2) classification.
  std::optional<bool> degenerate;
  double degeneracy_tol = 1e-12;
};

/// Grid and sampled potential, shared read-only by every solve on a problem.
struct Discretization {
  Discretization(const ProblemSpec& spec);

  ProblemSpec spec;
  Grid grid;
  std::vector<double> v;
  /// max(0, -min V). The implicit operator uses V + v_shift >= 0.
  double v_shift = 0.0;
  std::vector<double> v_shifted;
};

/// Truncation box for the harmonic whole-space problem: half-length per axis
/// max(8/sqrt(gamma_j), 1.5 sqrt(2 mu_TF)/gamma_j) at beta_max.
BoxDomain whole_space_domain(const std::vector<double>& gamma, double beta_max);

bool is_degenerate(const ProblemSpec& spec);

enum class ExcitedMode {
  None,      ///< ground state
  OddInX1,   ///< real state odd about the x_1 midline
  Vortex,    ///< winding-1 state (quarter-turn class, or x_1 ring when periodic)
  Branch1D,  ///< 1D continuation of the second linear eigenstate (any potential)
};

std::string_view to_string(ExcitedMode mode);
ExcitedMode parse_excited_mode(std::string_view name);

/// Mode used for the first excited state when the caller does not choose.
ExcitedMode default_excited_mode(const Discretization& disc);
/// Symmetry class enforced by a mode on this grid.
SymmetryClass symmetry_class(ExcitedMode mode, const Grid& grid);

struct SolverConfig {
  double tau = 0.0;  ///< 0 selects 0.1/(1 + beta max|phi|^2), floored at tau_min
  double tau_min = 1e-4;
  double stop_tol = 1e-7;      ///< on ||phi^{n+1} - phi^n||_inf / tau
  double residual_tol = 1e-6;  ///< eigen-residual needed to report convergence
  int max_iter = 200000;
  double linear_tol = 1e-10;
  int linear_max_iter = 5000;
  ExcitedMode mode = ExcitedMode::None;
  double symmetry_tol = 1e-8;
  bool record_history = true;
  double perturbation = 0.0;  ///< relative amplitude of seeded noise on the initial guess
  unsigned long long seed = 1;
};

enum class SolveStatus { Converged, NotConverged, Failed };

std::string_view to_string(SolveStatus status);

struct SolveReport {
  WaveField field;
  EnergyBreakdown energy;
  double beta = 0.0;
  double residual = 0.0;
  int iterations = 0;
  long long linear_iterations = 0;
  std::vector<double> energy_history;
  double wall_seconds = 0.0;
  SolveStatus status = SolveStatus::Failed;
  std::string message;
  ExcitedMode mode = ExcitedMode::None;
  double winding = 0.0;
  double symmetry_defect = 0.0;  ///< largest pre-projection defect seen
  double tau = 0.0;              ///< last step size used

  bool converged() const { return status == SolveStatus::Converged; }
};

struct StepResult {
  WaveField field;
  int linear_iterations = 0;
};

/// One normalized backward-Euler step
/// (1/tau - 1/2 Delta_h + V + beta|phi^n|^2) phi* = phi^n / tau, phi^{n+1} = phi*/||phi*||.
/// `v` must be nonnegative for the system to be positive definite.
StepResult befd_step(const WaveField& phi, std::span<const double> v, double beta, double tau,
                     const Grid& grid, double linear_tol = 1e-10, int linear_max_iter = 5000);

/// Default initial guess for a mode, normalized.
WaveField initial_guess(const Discretization& disc, ExcitedMode mode);

SolveReport solve_ground(const Discretization& disc, double beta, const SolverConfig& cfg,
                         const WaveField* warm_start = nullptr);
/// cfg.mode selects the branch; None is rejected.
SolveReport solve_excited(const Discretization& disc, double beta, const SolverConfig& cfg,
                          const WaveField* warm_start = nullptr);
/// Dispatches on cfg.mode.
SolveReport solve(const Discretization& disc, double beta, const SolverConfig& cfg,
                  const WaveField* warm_start = nullptr);

SolveReport solve_ground(const ProblemSpec& spec, const SolverConfig& cfg);
SolveReport solve_excited(const ProblemSpec& spec, const SolverConfig& cfg);

/// Ascending beta list; each solve starts from the previous converged field.
/// Per-beta failures are recorded in the report and the sweep continues.
std::vector<SolveReport> continue_in_beta(const Discretization& disc,
                                          const std::vector<double>& betas,
                                          const SolverConfig& cfg);

}  // namespace gpegap
