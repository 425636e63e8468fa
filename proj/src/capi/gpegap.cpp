#include "gpegap/gpegap.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "gpegap/asymptotics.hpp"
#include "gpegap/error.hpp"
#include "gpegap/field_io.hpp"
#include "gpegap/gaps.hpp"
#include "gpegap/potential.hpp"
#include "gpegap/solver.hpp"

#ifndef GPEGAP_VERSION_STRING
#define GPEGAP_VERSION_STRING "0.0.0"
#endif

using namespace gpegap;

struct gpegap_problem {
  ProblemSpec spec;
  std::shared_ptr<const Discretization> disc;
  std::optional<bool> convex;
  std::optional<double> gamma_v;
  std::string description;

  void rebuild(ProblemSpec next) {
    auto fresh = std::make_shared<const Discretization>(next);
    spec = std::move(next);
    disc = std::move(fresh);
    description = describe(spec.potential);
  }
};

struct gpegap_report {
  SolveReport report;
};

struct gpegap_sweep {
  std::shared_ptr<const Discretization> disc;
  SweepResult result;
  ExcitedMode mode = ExcitedMode::OddInX1;
  std::optional<bool> convex;
  std::optional<double> gamma_v;
  std::optional<ConjectureBounds> bounds;
  std::optional<ConjectureReport> check;
  std::string family;
};

namespace {

thread_local std::string last_error;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

gpegap_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return GPEGAP_INVALID_ARGUMENT;
    case ErrorCode::NotConverged: return GPEGAP_NOT_CONVERGED;
    case ErrorCode::SymmetryViolated: return GPEGAP_SYMMETRY_VIOLATED;
    case ErrorCode::LinearSolveFailed: return GPEGAP_LINEAR_SOLVE_FAILED;
    case ErrorCode::Io: return GPEGAP_IO_ERROR;
    case ErrorCode::Unavailable: return GPEGAP_UNAVAILABLE;
    case ErrorCode::NumericalFault: return GPEGAP_NUMERICAL_FAULT;
  }
  return GPEGAP_INTERNAL_ERROR;
}

gpegap_status set_error(gpegap_status status, const std::string& what) {
  last_error = what;
  return status;
}

template <class F>
gpegap_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(GPEGAP_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return set_error(GPEGAP_INTERNAL_ERROR, e.what());
  } catch (...) {
    return set_error(GPEGAP_INTERNAL_ERROR, "unknown failure");
  }
}

#define GPEGAP_CHECK(cond, msg) \
  if (!(cond)) return set_error(GPEGAP_INVALID_ARGUMENT, msg)

ExcitedMode to_mode(gpegap_mode mode, const Discretization& disc) {
  switch (mode) {
    case GPEGAP_MODE_GROUND: return ExcitedMode::None;
    case GPEGAP_MODE_ODD: return ExcitedMode::OddInX1;
    case GPEGAP_MODE_VORTEX: return ExcitedMode::Vortex;
    case GPEGAP_MODE_BRANCH: return ExcitedMode::Branch1D;
    case GPEGAP_MODE_DEFAULT: return default_excited_mode(disc);
  }
  fail(ErrorCode::InvalidArgument, "unknown mode " + std::to_string(static_cast<int>(mode)));
}

gpegap_mode from_mode(ExcitedMode mode) {
  switch (mode) {
    case ExcitedMode::None: return GPEGAP_MODE_GROUND;
    case ExcitedMode::OddInX1: return GPEGAP_MODE_ODD;
    case ExcitedMode::Vortex: return GPEGAP_MODE_VORTEX;
    case ExcitedMode::Branch1D: return GPEGAP_MODE_BRANCH;
  }
  return GPEGAP_MODE_GROUND;
}

Boundary to_boundary(gpegap_bc bc) {
  switch (bc) {
    case GPEGAP_BC_DIRICHLET: return Boundary::Dirichlet;
    case GPEGAP_BC_NEUMANN: return Boundary::Neumann;
    case GPEGAP_BC_PERIODIC: return Boundary::Periodic;
    case GPEGAP_BC_WHOLE_SPACE: return Boundary::TruncatedWholeSpace;
  }
  fail(ErrorCode::InvalidArgument, "unknown boundary condition");
}

gpegap_regime from_regime(asym::Regime r) {
  switch (r) {
    case asym::Regime::WeakLinear: return GPEGAP_REGIME_WEAK_LINEAR;
    case asym::Regime::WeakQuadratic: return GPEGAP_REGIME_WEAK_QUADRATIC;
    case asym::Regime::Strong: return GPEGAP_REGIME_STRONG;
    case asym::Regime::StrongLogarithmic: return GPEGAP_REGIME_STRONG_LOG;
    case asym::Regime::Exact: return GPEGAP_REGIME_EXACT;
  }
  return GPEGAP_REGIME_EXACT;
}

gpegap_trend from_trend(Trend t) {
  switch (t) {
    case Trend::Increasing: return GPEGAP_TREND_INCREASING;
    case Trend::Decreasing: return GPEGAP_TREND_DECREASING;
    case Trend::Constant: return GPEGAP_TREND_CONSTANT;
    case Trend::Neither: return GPEGAP_TREND_NEITHER;
  }
  return GPEGAP_TREND_NEITHER;
}

SolverConfig to_config(const gpegap_solver_options* o) {
  SolverConfig cfg;
  if (!o) return cfg;
  cfg.tau = o->tau;
  cfg.tau_min = o->tau_min;
  cfg.stop_tol = o->stop_tol;
  cfg.residual_tol = o->residual_tol;
  cfg.max_iter = o->max_iter;
  cfg.linear_tol = o->linear_tol;
  cfg.linear_max_iter = o->linear_max_iter;
  cfg.symmetry_tol = o->symmetry_tol;
  cfg.record_history = o->record_history != 0;
  cfg.perturbation = o->perturbation;
  cfg.seed = o->seed;
  return cfg;
}

int dim_of(const gpegap_problem* p) { return p->spec.domain.dim; }

gpegap_status set_potential(gpegap_problem* p, PotentialSpec pot) {
  ProblemSpec next = p->spec;
  next.potential = std::move(pot);
  p->rebuild(std::move(next));
  return GPEGAP_OK;
}

const char* static_view(std::string_view s) { return s.data(); }

}  // namespace

extern "C" {

const char* gpegap_version(void) { return GPEGAP_VERSION_STRING; }

const char* gpegap_status_string(gpegap_status status) {
  switch (status) {
    case GPEGAP_OK: return "ok";
    case GPEGAP_INVALID_ARGUMENT: return "invalid argument";
    case GPEGAP_NOT_CONVERGED: return "not converged";
    case GPEGAP_SYMMETRY_VIOLATED: return "symmetry violated";
    case GPEGAP_LINEAR_SOLVE_FAILED: return "linear solve failed";
    case GPEGAP_IO_ERROR: return "i/o error";
    case GPEGAP_UNAVAILABLE: return "unavailable";
    case GPEGAP_NUMERICAL_FAULT: return "numerical fault";
    case GPEGAP_PARTIAL_FAILURE: return "partial failure";
    case GPEGAP_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

const char* gpegap_last_error(void) { return last_error.c_str(); }

// Problems -------------------------------------------------------------------

gpegap_status gpegap_problem_new(int dim, const double* lengths, const int* n, gpegap_bc bc,
                                 gpegap_problem** out) {
  return guarded([&] {
    GPEGAP_CHECK(out && lengths && n, "null argument");
    *out = nullptr;
    GPEGAP_CHECK(dim >= 1 && dim <= kMaxDim, "dimension must be 1, 2 or 3");
    GPEGAP_CHECK(bc != GPEGAP_BC_WHOLE_SPACE, "use gpegap_problem_new_whole_space");
    ProblemSpec spec;
    spec.domain = BoxDomain::from_lengths(std::span(lengths, static_cast<std::size_t>(dim)));
    spec.n.assign(n, n + dim);
    spec.bc = to_boundary(bc);
    auto p = std::make_unique<gpegap_problem>();
    p->rebuild(std::move(spec));
    *out = p.release();
    return GPEGAP_OK;
  });
}

gpegap_status gpegap_problem_new_whole_space(int dim, const double* gamma, double beta_max,
                                             const int* n, gpegap_problem** out) {
  return guarded([&] {
    GPEGAP_CHECK(out && gamma && n, "null argument");
    *out = nullptr;
    GPEGAP_CHECK(dim >= 1 && dim <= kMaxDim, "dimension must be 1, 2 or 3");
    std::vector<double> g(gamma, gamma + dim);
    ProblemSpec spec;
    spec.domain = whole_space_domain(g, beta_max);
    spec.n.assign(n, n + dim);
    spec.bc = Boundary::TruncatedWholeSpace;
    spec.potential = potential::Harmonic{g};
    auto p = std::make_unique<gpegap_problem>();
    p->rebuild(std::move(spec));
    *out = p.release();
    return GPEGAP_OK;
  });
}

void gpegap_problem_free(gpegap_problem* problem) { delete problem; }

gpegap_status gpegap_problem_set_zero(gpegap_problem* problem) {
  return guarded([&] {
    GPEGAP_CHECK(problem, "null problem");
    return set_potential(problem, potential::Zero{});
  });
}

gpegap_status gpegap_problem_set_harmonic(gpegap_problem* problem, const double* gamma) {
  return guarded([&] {
    GPEGAP_CHECK(problem && gamma, "null argument");
    return set_potential(problem, potential::Harmonic{{gamma, gamma + dim_of(problem)}});
  });
}

gpegap_status gpegap_problem_set_harmonic_cosine(gpegap_problem* problem, double gamma, double v0,
                                                 double k) {
  return guarded([&] {
    GPEGAP_CHECK(problem, "null problem");
    return set_potential(problem, potential::HarmonicPlusCosine{gamma, v0, k});
  });
}

gpegap_status gpegap_problem_set_shifted_quadratic(gpegap_problem* problem, double v0,
                                                   const double* center) {
  return guarded([&] {
    GPEGAP_CHECK(problem && center, "null argument");
    return set_potential(problem,
                         potential::ShiftedQuadratic{v0, {center, center + dim_of(problem)}});
  });
}

gpegap_status gpegap_problem_set_negative_quadratic(gpegap_problem* problem, double coef) {
  return guarded([&] {
    GPEGAP_CHECK(problem, "null problem");
    return set_potential(problem, potential::NegativeQuadratic{coef});
  });
}

gpegap_status gpegap_problem_set_sine(gpegap_problem* problem, double amplitude, double k,
                                      double shift) {
  return guarded([&] {
    GPEGAP_CHECK(problem, "null problem");
    return set_potential(problem, potential::Sine{amplitude, k, shift});
  });
}

gpegap_status gpegap_problem_set_tabulated(gpegap_problem* problem, const double* values,
                                           size_t count) {
  return guarded([&] {
    GPEGAP_CHECK(problem && values, "null argument");
    return set_potential(problem, potential::Tabulated{{values, values + count}});
  });
}

gpegap_status gpegap_problem_load_tabulated(gpegap_problem* problem, const char* path) {
  return guarded([&] {
    GPEGAP_CHECK(problem && path, "null argument");
    return set_potential(problem, load_tabulated(path));
  });
}

gpegap_status gpegap_problem_set_degenerate(gpegap_problem* problem, int flag) {
  return guarded([&] {
    GPEGAP_CHECK(problem, "null problem");
    ProblemSpec next = problem->spec;
    if (flag < 0) {
      next.degenerate.reset();
    } else {
      next.degenerate = flag != 0;
    }
    problem->rebuild(std::move(next));
    return GPEGAP_OK;
  });
}

gpegap_status gpegap_problem_set_convexity(gpegap_problem* problem, int convex, double gamma_v) {
  return guarded([&] {
    GPEGAP_CHECK(problem, "null problem");
    GPEGAP_CHECK(!std::isnan(gamma_v), "gamma_v is NaN");
    problem->convex = convex < 0 ? std::nullopt : std::optional<bool>(convex != 0);
    problem->gamma_v = gamma_v < 0.0 ? std::nullopt : std::optional<double>(gamma_v);
    return GPEGAP_OK;
  });
}

int gpegap_problem_dim(const gpegap_problem* problem) { return problem ? dim_of(problem) : 0; }

gpegap_status gpegap_problem_domain(const gpegap_problem* problem, double* lengths,
                                    double* origin) {
  return guarded([&] {
    GPEGAP_CHECK(problem, "null problem");
    const BoxDomain& d = problem->spec.domain;
    for (int j = 0; j < d.dim; ++j) {
      if (lengths) lengths[j] = d.lengths[j];
      if (origin) origin[j] = d.origin[j];
    }
    return GPEGAP_OK;
  });
}

gpegap_bc gpegap_problem_bc(const gpegap_problem* problem) {
  if (!problem) return GPEGAP_BC_DIRICHLET;
  switch (problem->spec.bc) {
    case Boundary::Dirichlet: return GPEGAP_BC_DIRICHLET;
    case Boundary::Neumann: return GPEGAP_BC_NEUMANN;
    case Boundary::Periodic: return GPEGAP_BC_PERIODIC;
    case Boundary::TruncatedWholeSpace: return GPEGAP_BC_WHOLE_SPACE;
  }
  return GPEGAP_BC_DIRICHLET;
}

size_t gpegap_problem_nodes(const gpegap_problem* problem) {
  return problem ? problem->disc->grid.size() : 0;
}

double gpegap_problem_diameter(const gpegap_problem* problem) {
  return problem ? problem->spec.domain.diameter() : kNaN;
}

double gpegap_problem_volume(const gpegap_problem* problem) {
  return problem ? problem->spec.domain.volume() : kNaN;
}

int gpegap_problem_is_degenerate(const gpegap_problem* problem) {
  return problem && is_degenerate(problem->spec) ? 1 : 0;
}

gpegap_mode gpegap_problem_default_mode(const gpegap_problem* problem) {
  if (!problem) return GPEGAP_MODE_GROUND;
  return from_mode(default_excited_mode(*problem->disc));
}

const char* gpegap_problem_describe(const gpegap_problem* problem) {
  return problem ? problem->description.c_str() : "";
}

// Solves ---------------------------------------------------------------------

void gpegap_solver_options_default(gpegap_solver_options* options) {
  if (!options) return;
  const SolverConfig cfg;
  options->tau = cfg.tau;
  options->tau_min = cfg.tau_min;
  options->stop_tol = cfg.stop_tol;
  options->residual_tol = cfg.residual_tol;
  options->max_iter = cfg.max_iter;
  options->linear_tol = cfg.linear_tol;
  options->linear_max_iter = cfg.linear_max_iter;
  options->symmetry_tol = cfg.symmetry_tol;
  options->record_history = cfg.record_history ? 1 : 0;
  options->perturbation = cfg.perturbation;
  options->seed = cfg.seed;
}

const char* gpegap_mode_string(gpegap_mode mode) {
  switch (mode) {
    case GPEGAP_MODE_GROUND: return "ground";
    case GPEGAP_MODE_ODD: return "odd";
    case GPEGAP_MODE_VORTEX: return "vortex";
    case GPEGAP_MODE_BRANCH: return "branch";
    case GPEGAP_MODE_DEFAULT: return "default";
  }
  return "unknown";
}

gpegap_status gpegap_mode_parse(const char* name, gpegap_mode* out) {
  return guarded([&] {
    GPEGAP_CHECK(name && out, "null argument");
    if (std::strcmp(name, "default") == 0) {
      *out = GPEGAP_MODE_DEFAULT;
      return GPEGAP_OK;
    }
    *out = from_mode(parse_excited_mode(name));
    return GPEGAP_OK;
  });
}

gpegap_status gpegap_solve(const gpegap_problem* problem, double beta, gpegap_mode mode,
                           const gpegap_solver_options* options, gpegap_report** out) {
  return guarded([&] {
    GPEGAP_CHECK(problem && out, "null argument");
    *out = nullptr;
    SolverConfig cfg = to_config(options);
    cfg.mode = to_mode(mode, *problem->disc);
    auto r = std::make_unique<gpegap_report>();
    r->report = solve(*problem->disc, beta, cfg);
    const SolveStatus st = r->report.status;
    const std::string msg = r->report.message;
    *out = r.release();
    if (st == SolveStatus::Converged) return GPEGAP_OK;
    return set_error(st == SolveStatus::NotConverged ? GPEGAP_NOT_CONVERGED
                                                     : GPEGAP_NUMERICAL_FAULT,
                     msg.empty() ? "solve did not converge" : msg);
  });
}

void gpegap_report_free(gpegap_report* report) { delete report; }

gpegap_status gpegap_report_get(const gpegap_report* report, gpegap_report_summary* out) {
  return guarded([&] {
    GPEGAP_CHECK(report && out, "null argument");
    const SolveReport& r = report->report;
    out->beta = r.beta;
    out->energy = r.energy.energy;
    out->chemical_potential = r.energy.chemical_potential;
    out->kinetic = r.energy.kinetic;
    out->potential = r.energy.potential;
    out->interaction = r.energy.interaction;
    out->residual = r.residual;
    out->iterations = r.iterations;
    out->linear_iterations = r.linear_iterations;
    out->wall_seconds = r.wall_seconds;
    out->winding = r.winding;
    out->symmetry_defect = r.symmetry_defect;
    out->tau = r.tau;
    out->converged = r.converged() ? 1 : 0;
    out->mode = from_mode(r.mode);
    return GPEGAP_OK;
  });
}

const char* gpegap_report_message(const gpegap_report* report) {
  return report ? report->report.message.c_str() : "";
}

size_t gpegap_report_history_size(const gpegap_report* report) {
  return report ? report->report.energy_history.size() : 0;
}

gpegap_status gpegap_report_history(const gpegap_report* report, double* out, size_t count) {
  return guarded([&] {
    GPEGAP_CHECK(report && out, "null argument");
    const auto& h = report->report.energy_history;
    GPEGAP_CHECK(count >= h.size(), "buffer too small");
    std::copy(h.begin(), h.end(), out);
    return GPEGAP_OK;
  });
}

size_t gpegap_report_field_size(const gpegap_report* report) {
  return report ? report->report.field.size() : 0;
}

int gpegap_report_field_is_complex(const gpegap_report* report) {
  return report && !report->report.field.real_valued() ? 1 : 0;
}

gpegap_status gpegap_report_field(const gpegap_report* report, double* re, double* im,
                                  size_t count) {
  return guarded([&] {
    GPEGAP_CHECK(report && re, "null argument");
    const WaveField& f = report->report.field;
    GPEGAP_CHECK(count >= f.size(), "buffer too small");
    std::copy(f.re.begin(), f.re.end(), re);
    if (im) {
      if (f.real_valued()) {
        std::fill(im, im + f.size(), 0.0);
      } else {
        std::copy(f.im.begin(), f.im.end(), im);
      }
    }
    return GPEGAP_OK;
  });
}

gpegap_status gpegap_report_write_field(const gpegap_report* report,
                                        const gpegap_problem* problem, const char* path) {
  return guarded([&] {
    GPEGAP_CHECK(report && problem && path, "null argument");
    GPEGAP_CHECK(report->report.field.size() == problem->disc->grid.size(),
                 "report does not belong to this problem");
    write_field(path, report->report.field, problem->disc->grid, report->report.beta);
    return GPEGAP_OK;
  });
}

// Gap sweeps -----------------------------------------------------------------

gpegap_status gpegap_gap_sweep(const gpegap_problem* problem, const double* betas, size_t count,
                               gpegap_mode excited, const gpegap_solver_options* options,
                               int jobs, gpegap_sweep** out) {
  return guarded([&] {
    GPEGAP_CHECK(problem && betas && out, "null argument");
    *out = nullptr;
    GPEGAP_CHECK(count > 0, "beta list is empty");
    auto s = std::make_unique<gpegap_sweep>();
    s->disc = problem->disc;
    s->mode = to_mode(excited, *problem->disc);
    GPEGAP_CHECK(s->mode != ExcitedMode::None, "gap sweep needs an excited mode");
    s->convex = problem->convex;
    s->gamma_v = problem->gamma_v;
    s->result = run_gap_sweep(*s->disc, {betas, betas + count}, to_config(options), s->mode, jobs);
    const bool ok = s->result.curve.all_ok();
    *out = s.release();
    if (ok) return GPEGAP_OK;
    return set_error(GPEGAP_PARTIAL_FAILURE, "one or more sweep rows failed");
  });
}

void gpegap_sweep_free(gpegap_sweep* sweep) { delete sweep; }

size_t gpegap_sweep_size(const gpegap_sweep* sweep) {
  return sweep ? sweep->result.curve.rows.size() : 0;
}

gpegap_mode gpegap_sweep_mode(const gpegap_sweep* sweep) {
  return sweep ? from_mode(sweep->mode) : GPEGAP_MODE_GROUND;
}

gpegap_status gpegap_sweep_row(const gpegap_sweep* sweep, size_t index, gpegap_gap_row* out) {
  return guarded([&] {
    GPEGAP_CHECK(sweep && out, "null argument");
    GPEGAP_CHECK(index < sweep->result.curve.rows.size(), "row index out of range");
    const GapRow& r = sweep->result.curve.rows[index];
    out->beta = r.beta;
    out->E_g = r.E_g;
    out->mu_g = r.mu_g;
    out->E_1 = r.E_1;
    out->mu_1 = r.mu_1;
    out->delta_E = r.delta_E;
    out->delta_mu = r.delta_mu;
    out->residual_g = r.residual_g;
    out->residual_1 = r.residual_1;
    out->iters_g = r.iters_g;
    out->iters_1 = r.iters_1;
    out->status = static_cast<gpegap_row_status>(r.status);
    out->seconds_g = sweep->result.ground[index].wall_seconds;
    out->seconds_1 = sweep->result.excited[index].wall_seconds;
    return GPEGAP_OK;
  });
}

const char* gpegap_sweep_row_message(const gpegap_sweep* sweep, size_t index) {
  if (!sweep || index >= sweep->result.curve.rows.size()) return "";
  return sweep->result.curve.rows[index].message.c_str();
}

const char* gpegap_row_status_string(gpegap_row_status status) {
  return static_view(to_string(static_cast<RowStatus>(status)));
}

gpegap_status gpegap_sweep_bounds(gpegap_sweep* sweep, gpegap_bounds* out) {
  return guarded([&] {
    GPEGAP_CHECK(sweep && out, "null argument");
    if (!sweep->bounds) {
      sweep->bounds = conjecture_bounds(sweep->result.curve.problem, sweep->convex,
                                        sweep->gamma_v);
      sweep->family = std::string(to_string(sweep->bounds->family));
    }
    const ConjectureBounds& b = *sweep->bounds;
    out->family = sweep->family.c_str();
    out->applicable = b.applicable ? 1 : 0;
    out->delta_E = b.delta_E;
    out->delta_mu = b.delta_mu;
    out->has_stronger = b.has_stronger ? 1 : 0;
    out->breakpoint_E = b.breakpoint_E;
    out->breakpoint_mu = b.breakpoint_mu;
    out->limit_zero = b.limit_zero ? 1 : 0;
    out->diameter = b.diameter;
    out->volume = b.volume;
    out->gamma_v = b.gamma_v;
    out->note = b.note.c_str();
    return GPEGAP_OK;
  });
}

double gpegap_bounds_stronger_E(const gpegap_sweep* sweep, double beta) {
  return sweep && sweep->bounds ? sweep->bounds->stronger_E(beta) : kNaN;
}

double gpegap_bounds_stronger_mu(const gpegap_sweep* sweep, double beta) {
  return sweep && sweep->bounds ? sweep->bounds->stronger_mu(beta) : kNaN;
}

gpegap_status gpegap_sweep_check(gpegap_sweep* sweep, double slack, double weak_window,
                                 gpegap_conjecture* out) {
  return guarded([&] {
    GPEGAP_CHECK(sweep && out, "null argument");
    gpegap_bounds ignored;
    const gpegap_status st = gpegap_sweep_bounds(sweep, &ignored);
    if (st != GPEGAP_OK) return st;
    sweep->check = check_conjecture(sweep->result.curve, *sweep->bounds, slack, weak_window);
    const ConjectureReport& c = *sweep->check;
    out->applicable = c.applicable ? 1 : 0;
    out->min_delta_E = c.min_delta_E;
    out->min_delta_mu = c.min_delta_mu;
    out->margin_E = c.margin_E;
    out->margin_mu = c.margin_mu;
    out->violations = c.violations.size();
    out->stronger_violations = c.stronger_violations.size();
    out->trend_E = from_trend(c.trend_E);
    out->trend_mu = from_trend(c.trend_mu);
    out->fitted_C_E = c.fitted_C_E;
    out->fitted_C_mu = c.fitted_C_mu;
    out->holds = c.holds ? 1 : 0;
    out->note = c.note.c_str();
    return GPEGAP_OK;
  });
}

gpegap_status gpegap_sweep_row_margins(const gpegap_sweep* sweep, size_t index, double* margin_E,
                                       double* margin_mu, double* stronger_E,
                                       double* stronger_mu) {
  return guarded([&] {
    GPEGAP_CHECK(sweep, "null sweep");
    if (!sweep->check) return set_error(GPEGAP_UNAVAILABLE, "run gpegap_sweep_check first");
    const ConjectureReport& c = *sweep->check;
    GPEGAP_CHECK(index < sweep->result.curve.rows.size(), "row index out of range");
    auto pick = [&](const std::vector<double>& v) { return index < v.size() ? v[index] : kNaN; };
    if (margin_E) *margin_E = pick(c.row_margin_E);
    if (margin_mu) *margin_mu = pick(c.row_margin_mu);
    if (stronger_E) *stronger_E = pick(c.row_stronger_margin_E);
    if (stronger_mu) *stronger_mu = pick(c.row_stronger_margin_mu);
    return GPEGAP_OK;
  });
}

const char* gpegap_trend_string(gpegap_trend trend) {
  switch (trend) {
    case GPEGAP_TREND_INCREASING: return "increasing";
    case GPEGAP_TREND_DECREASING: return "decreasing";
    case GPEGAP_TREND_CONSTANT: return "constant";
    case GPEGAP_TREND_NEITHER: return "neither";
  }
  return "unknown";
}

void gpegap_compare_options_default(gpegap_compare_options* options) {
  if (!options) return;
  const CompareOptions o;
  options->weak_max = o.guard.weak_max;
  options->strong_min = o.guard.strong_min;
  options->higher_order = o.higher_order ? 1 : 0;
  options->fit_min = o.fit_min;
  options->fit_max = o.fit_max;
  options->upper_half = o.upper_half ? 1 : 0;
}

gpegap_status gpegap_sweep_compare(const gpegap_sweep* sweep,
                                   const gpegap_compare_options* options, gpegap_compare_row* rows,
                                   gpegap_slope_fit* fit) {
  return guarded([&] {
    GPEGAP_CHECK(sweep, "null sweep");
    CompareOptions o;
    if (options) {
      o.guard.weak_max = options->weak_max;
      o.guard.strong_min = options->strong_min;
      o.higher_order = options->higher_order != 0;
      o.fit_min = options->fit_min;
      o.fit_max = options->fit_max;
      o.upper_half = options->upper_half != 0;
    }
    const Comparison cmp = compare_numeric_asymptotic(sweep->result.curve, o);
    if (rows) {
      for (std::size_t k = 0; k < cmp.rows.size(); ++k) {
        const ComparisonRow& c = cmp.rows[k];
        rows[k] = {c.beta,      c.available ? 1 : 0, from_regime(c.regime), c.extrapolated ? 1 : 0,
                   c.numeric_E, c.numeric_mu,        c.asym_E,              c.asym_mu,
                   c.rel_diff_E, c.rel_diff_mu};
      }
    }
    if (fit) {
      fit->available = cmp.fit.available ? 1 : 0;
      fit->slope = cmp.fit.slope;
      fit->intercept = cmp.fit.intercept;
      fit->expected = cmp.fit.expected;
      fit->rel_error = cmp.fit.rel_error;
      fit->points = cmp.fit.points;
      static const std::string kBox = "delta_E vs ln(beta)";
      fit->quantity = cmp.fit.quantity.empty() ? ""
                      : cmp.fit.quantity == kBox ? "delta_E vs ln(beta)"
                                                 : "delta_E / sqrt(pi/beta) vs ln(beta)";
    }
    return GPEGAP_OK;
  });
}

// Asymptotics ----------------------------------------------------------------

void gpegap_asym_query_default(gpegap_asym_query* query) {
  if (!query) return;
  const asym::RegimeGuard guard;
  *query = {};
  query->problem = GPEGAP_ASYM_BOX;
  query->dim = 1;
  query->params[0] = query->params[1] = query->params[2] = 1.0;
  query->regime = GPEGAP_ASYM_AUTO;
  query->higher_order = 1;
  query->degenerate = -1;
  query->weak_max = guard.weak_max;
  query->strong_min = guard.strong_min;
}

gpegap_status gpegap_asym_evaluate(const gpegap_asym_query* query, gpegap_asym_values* out) {
  return guarded([&] {
    GPEGAP_CHECK(query && out, "null argument");
    GPEGAP_CHECK(query->dim >= 1 && query->dim <= 3, "dimension must be 1, 2 or 3");
    const std::vector<double> p(query->params, query->params + query->dim);
    const asym::RegimeGuard guard{query->weak_max, query->strong_min};
    const double beta = query->beta;
    const bool weak = query->regime == GPEGAP_ASYM_WEAK ||
                      (query->regime == GPEGAP_ASYM_AUTO && beta <= guard.weak_max);
    const bool harmonic = query->problem == GPEGAP_ASYM_HARMONIC;
    const bool auto_degenerate =
        harmonic ? asym::harmonic_degenerate(p) : asym::box_degenerate(p);
    const bool degenerate = query->degenerate < 0 ? auto_degenerate : query->degenerate != 0;
    auto unavailable = [](const char* what) { return set_error(GPEGAP_UNAVAILABLE, what); };

    asym::Values v;
    switch (query->problem) {
      case GPEGAP_ASYM_PERIODIC:
        v = asym::periodic_exact(p, beta);
        break;
      case GPEGAP_ASYM_BOX:
        if (weak) {
          v = asym::box_weak(p, beta, degenerate, guard);
          if (!degenerate) {
            const auto second = asym::box_gap_weak_secondorder(p, beta, guard);
            v.delta_E = second.delta_E;
            v.delta_mu = second.delta_mu;
            v.regime = second.regime;
          }
        } else if (degenerate) {
          if (query->dim != 2) return unavailable("degenerate strong box formulas need d = 2");
          v = asym::box_degenerate_strong_2d(p, beta, guard);
        } else {
          v = asym::box_strong(p, beta, guard);
        }
        break;
      case GPEGAP_ASYM_HARMONIC:
        if (weak) {
          v = asym::harmonic_weak(p, beta, degenerate, guard);
        } else if (degenerate) {
          if (query->dim != 2) return unavailable("degenerate strong trap formulas need d = 2");
          v = asym::harmonic_degenerate_strong_2d(p, beta, guard);
        } else {
          v = asym::harmonic_strong(p, beta, query->higher_order != 0, guard);
        }
        break;
      case GPEGAP_ASYM_NEUMANN:
        if (!weak && degenerate && query->dim != 2) {
          return unavailable("degenerate strong Neumann formulas need d = 2");
        }
        v = asym::neumann_asym(p, beta, degenerate,
                               weak ? asym::NeumannRegime::Weak : asym::NeumannRegime::Strong,
                               guard);
        break;
      default:
        return set_error(GPEGAP_INVALID_ARGUMENT, "unknown problem class");
    }
    out->E_g = v.E_g;
    out->mu_g = v.mu_g;
    out->E_1 = v.E_1;
    out->mu_1 = v.mu_1;
    out->delta_E = v.delta_E;
    out->delta_mu = v.delta_mu;
    out->regime = from_regime(v.regime);
    out->extrapolated = v.extrapolated ? 1 : 0;
    out->degenerate = degenerate ? 1 : 0;
    std::memset(out->note, 0, sizeof(out->note));
    std::strncpy(out->note, v.note.c_str(), sizeof(out->note) - 1);
    return GPEGAP_OK;
  });
}

const char* gpegap_regime_string(gpegap_regime regime) {
  switch (regime) {
    case GPEGAP_REGIME_WEAK_LINEAR: return "weak-linear";
    case GPEGAP_REGIME_WEAK_QUADRATIC: return "weak-quadratic";
    case GPEGAP_REGIME_STRONG: return "strong";
    case GPEGAP_REGIME_STRONG_LOG: return "strong-log";
    case GPEGAP_REGIME_EXACT: return "exact";
  }
  return "unknown";
}

}  // extern "C"
