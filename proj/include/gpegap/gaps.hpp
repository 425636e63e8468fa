#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gpegap/asymptotics.hpp"
#include "gpegap/solver.hpp"

namespace gpegap {

enum class RowStatus { Ok, GroundFailed, ExcitedFailed, BothFailed, NonPositiveGap };

std::string_view to_string(RowStatus status);

struct GapRow {
  double beta = 0.0;
  double E_g = 0.0, mu_g = 0.0, E_1 = 0.0, mu_1 = 0.0;
  double delta_E = 0.0, delta_mu = 0.0;
  double residual_g = 0.0, residual_1 = 0.0;
  int iters_g = 0, iters_1 = 0;
  RowStatus status = RowStatus::Ok;
  std::string message;
};

/// Identifies the problem a curve belongs to.
struct Fingerprint {
  ProblemSpec spec;
  bool degenerate = false;
  ExcitedMode mode = ExcitedMode::None;
  std::string potential;
  double diameter = 0.0;
  double volume = 0.0;
};

Fingerprint fingerprint(const Discretization& disc, ExcitedMode mode);

struct GapCurve {
  Fingerprint problem;
  std::vector<GapRow> rows;

  bool all_ok() const;
};

/// Pairs ground and excited reports per beta. With allow_failures false a
/// non-converged entry is an error; otherwise it becomes a flagged row.
/// Nonpositive gaps are flagged, never clamped.
GapCurve build_gap_curve(const Fingerprint& problem, const std::vector<SolveReport>& ground,
                         const std::vector<SolveReport>& excited, const std::vector<double>& betas,
                         bool allow_failures = false);

enum class BoundFamily {
  DirichletNondegenerate,
  DirichletDegenerate,
  WholeSpace,
  WholeSpaceDegenerate,
  Periodic,
  Neumann,
};

std::string_view to_string(BoundFamily family);

struct ConjectureBounds {
  BoundFamily family = BoundFamily::DirichletNondegenerate;
  bool applicable = true;
  double delta_E = 0.0;
  double delta_mu = 0.0;
  bool has_stronger = false;
  double breakpoint_E = 0.0;   ///< beta where the sqrt(beta) branch of the delta_E bound starts
  double breakpoint_mu = 0.0;
  bool limit_zero = false;     ///< gaps expected to vanish as beta -> infinity
  double diameter = 0.0;
  double volume = 0.0;
  double gamma_v = 0.0;
  std::string note;

  /// Beta-dependent bound; equals delta_E/delta_mu without a stronger form.
  double stronger_E(double beta) const;
  double stronger_mu(double beta) const;
};

/// convex/gamma_v override the closed-form classification of the potential.
ConjectureBounds conjecture_bounds(const Fingerprint& problem,
                                   std::optional<bool> convex = std::nullopt,
                                   std::optional<double> gamma_v = std::nullopt);

enum class Trend { Increasing, Decreasing, Constant, Neither };

std::string_view to_string(Trend trend);

/// Finite-difference classification with tolerance `tol`.
Trend classify_trend(const std::vector<double>& values, double tol = 1e-9);

struct Violation {
  double beta = 0.0;
  bool energy = true;  ///< false for the chemical-potential gap
  double margin = 0.0;
};

struct ConjectureReport {
  bool applicable = true;
  double min_delta_E = 0.0;  ///< minimum over the sampled beta values
  double min_delta_mu = 0.0;
  double margin_E = 0.0;  ///< min_delta_E - bound
  double margin_mu = 0.0;
  /// One entry per curve row, NaN where the row is skipped.
  std::vector<double> row_margin_E;
  std::vector<double> row_margin_mu;
  std::vector<double> row_stronger_margin_E;
  std::vector<double> row_stronger_margin_mu;
  std::vector<Violation> violations;
  std::vector<Violation> stronger_violations;
  Trend trend_E = Trend::Neither;
  Trend trend_mu = Trend::Neither;
  /// Degenerate whole space: smallest C with delta >= gamma_v - C beta on the weak window.
  double fitted_C_E = 0.0;
  double fitted_C_mu = 0.0;
  bool holds = true;
  std::string note;
};

/// Rows that are not Ok are skipped. A margin counts as a violation below -slack.
ConjectureReport check_conjecture(const GapCurve& curve, const ConjectureBounds& bounds,
                                  double slack = 0.0, double weak_window = 1.0);

struct ComparisonRow {
  double beta = 0.0;
  bool available = false;
  asym::Regime regime = asym::Regime::Exact;
  bool extrapolated = false;
  double numeric_E = 0.0, numeric_mu = 0.0;
  double asym_E = 0.0, asym_mu = 0.0;
  double rel_diff_E = 0.0, rel_diff_mu = 0.0;
};

struct SlopeFit {
  bool available = false;
  double slope = 0.0;
  double intercept = 0.0;
  double expected = 0.0;
  double rel_error = 0.0;
  int points = 0;
  std::string quantity;
};

struct CompareOptions {
  asym::RegimeGuard guard{};
  bool higher_order = true;  ///< harmonic strong branch with the next-order gap term
  double fit_min = 0.0;      ///< beta window of the logarithmic slope fit
  double fit_max = 0.0;      ///< 0 means no upper limit
  bool upper_half = true;    ///< fit only the upper half of the window
};

struct Comparison {
  std::vector<ComparisonRow> rows;
  SlopeFit fit;
};

Comparison compare_numeric_asymptotic(const GapCurve& curve, const CompareOptions& opts = {});

/// Asymptotic values for the problem at beta, or nullopt when no formula applies.
std::optional<asym::Values> asymptotic_gaps(const Fingerprint& problem, double beta,
                                            const CompareOptions& opts = {});

/// Least squares y = a + b x.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct SweepResult {
  GapCurve curve;
  std::vector<SolveReport> ground;
  std::vector<SolveReport> excited;
};

/// Ground and excited continuations over `betas`. jobs == 1 runs everything
/// on the calling thread; jobs >= 2 runs the ground and excited chains
/// concurrently (identical results), and jobs > 2 additionally splits the
/// beta list into independent cold-started chunks.
SweepResult run_gap_sweep(const Discretization& disc, const std::vector<double>& betas,
                          const SolverConfig& cfg, ExcitedMode excited, int jobs = 1);

}  // namespace gpegap
