#ifndef GPEGAP_GPEGAP_H
#define GPEGAP_GPEGAP_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(GPEGAP_BUILDING)
#    define GPEGAP_API __declspec(dllexport)
#  else
#    define GPEGAP_API __declspec(dllimport)
#  endif
#else
#  define GPEGAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  GPEGAP_OK = 0,
  GPEGAP_INVALID_ARGUMENT = 1,
  GPEGAP_NOT_CONVERGED = 2,
  GPEGAP_SYMMETRY_VIOLATED = 3,
  GPEGAP_LINEAR_SOLVE_FAILED = 4,
  GPEGAP_IO_ERROR = 5,
  GPEGAP_UNAVAILABLE = 6,
  GPEGAP_NUMERICAL_FAULT = 7,
  GPEGAP_PARTIAL_FAILURE = 8,
  GPEGAP_INTERNAL_ERROR = 99
} gpegap_status;

typedef enum {
  GPEGAP_BC_DIRICHLET = 0,
  GPEGAP_BC_NEUMANN = 1,
  GPEGAP_BC_PERIODIC = 2,
  GPEGAP_BC_WHOLE_SPACE = 3
} gpegap_bc;

typedef enum {
  GPEGAP_MODE_GROUND = 0,
  GPEGAP_MODE_ODD = 1,
  GPEGAP_MODE_VORTEX = 2,
  GPEGAP_MODE_BRANCH = 3,
  GPEGAP_MODE_DEFAULT = -1 /* first excited mode chosen from the problem */
} gpegap_mode;

typedef enum {
  GPEGAP_ROW_OK = 0,
  GPEGAP_ROW_GROUND_FAILED = 1,
  GPEGAP_ROW_EXCITED_FAILED = 2,
  GPEGAP_ROW_BOTH_FAILED = 3,
  GPEGAP_ROW_NONPOSITIVE_GAP = 4
} gpegap_row_status;

typedef enum {
  GPEGAP_TREND_INCREASING = 0,
  GPEGAP_TREND_DECREASING = 1,
  GPEGAP_TREND_CONSTANT = 2,
  GPEGAP_TREND_NEITHER = 3
} gpegap_trend;

typedef enum {
  GPEGAP_REGIME_WEAK_LINEAR = 0,
  GPEGAP_REGIME_WEAK_QUADRATIC = 1,
  GPEGAP_REGIME_STRONG = 2,
  GPEGAP_REGIME_STRONG_LOG = 3,
  GPEGAP_REGIME_EXACT = 4
} gpegap_regime;

typedef struct gpegap_problem gpegap_problem;
typedef struct gpegap_report gpegap_report;
typedef struct gpegap_sweep gpegap_sweep;

/* Library ----------------------------------------------------------------- */

GPEGAP_API const char* gpegap_version(void);
GPEGAP_API const char* gpegap_status_string(gpegap_status status);
/* Message of the last failing call on this thread; empty if none. */
GPEGAP_API const char* gpegap_last_error(void);

/* Problems ---------------------------------------------------------------- */

/* Box (0,L_1) x ... x (0,L_d) with n[j] nodes per axis, zero potential. */
GPEGAP_API gpegap_status gpegap_problem_new(int dim, const double* lengths, const int* n,
                                            gpegap_bc bc, gpegap_problem** out);
/* Harmonic trap on a truncation box sized for interaction strengths up to beta_max. */
GPEGAP_API gpegap_status gpegap_problem_new_whole_space(int dim, const double* gamma,
                                                        double beta_max, const int* n,
                                                        gpegap_problem** out);
GPEGAP_API void gpegap_problem_free(gpegap_problem* problem);

GPEGAP_API gpegap_status gpegap_problem_set_zero(gpegap_problem* problem);
GPEGAP_API gpegap_status gpegap_problem_set_harmonic(gpegap_problem* problem,
                                                     const double* gamma);
GPEGAP_API gpegap_status gpegap_problem_set_harmonic_cosine(gpegap_problem* problem,
                                                            double gamma, double v0, double k);
GPEGAP_API gpegap_status gpegap_problem_set_shifted_quadratic(gpegap_problem* problem, double v0,
                                                              const double* center);
GPEGAP_API gpegap_status gpegap_problem_set_negative_quadratic(gpegap_problem* problem,
                                                               double coef);
GPEGAP_API gpegap_status gpegap_problem_set_sine(gpegap_problem* problem, double amplitude,
                                                 double k, double shift);
/* Node values in row-major grid order (x_1 slowest). */
GPEGAP_API gpegap_status gpegap_problem_set_tabulated(gpegap_problem* problem,
                                                      const double* values, size_t count);
GPEGAP_API gpegap_status gpegap_problem_load_tabulated(gpegap_problem* problem,
                                                       const char* path);
/* flag < 0 restores the automatic classification. */
GPEGAP_API gpegap_status gpegap_problem_set_degenerate(gpegap_problem* problem, int flag);
/* convex < 0 and gamma_v < 0 restore the closed-form classification. */
GPEGAP_API gpegap_status gpegap_problem_set_convexity(gpegap_problem* problem, int convex,
                                                      double gamma_v);

GPEGAP_API int gpegap_problem_dim(const gpegap_problem* problem);
/* Computational box; origin is the lower corner. Arrays hold dim entries. */
GPEGAP_API gpegap_status gpegap_problem_domain(const gpegap_problem* problem, double* lengths,
                                               double* origin);
GPEGAP_API gpegap_bc gpegap_problem_bc(const gpegap_problem* problem);
GPEGAP_API size_t gpegap_problem_nodes(const gpegap_problem* problem);
GPEGAP_API double gpegap_problem_diameter(const gpegap_problem* problem);
GPEGAP_API double gpegap_problem_volume(const gpegap_problem* problem);
GPEGAP_API int gpegap_problem_is_degenerate(const gpegap_problem* problem);
GPEGAP_API gpegap_mode gpegap_problem_default_mode(const gpegap_problem* problem);
/* Pointer stays valid until the problem is modified or freed. */
GPEGAP_API const char* gpegap_problem_describe(const gpegap_problem* problem);

/* Solves ------------------------------------------------------------------ */

typedef struct {
  double tau; /* 0 selects the adaptive step */
  double tau_min;
  double stop_tol;
  double residual_tol;
  int max_iter;
  double linear_tol;
  int linear_max_iter;
  double symmetry_tol;
  int record_history;
  double perturbation;
  unsigned long long seed;
} gpegap_solver_options;

GPEGAP_API void gpegap_solver_options_default(gpegap_solver_options* options);

GPEGAP_API const char* gpegap_mode_string(gpegap_mode mode);
/* Accepts ground, odd, vortex, branch and default. */
GPEGAP_API gpegap_status gpegap_mode_parse(const char* name, gpegap_mode* out);

/* GPEGAP_NOT_CONVERGED still returns a report. options may be NULL. */
GPEGAP_API gpegap_status gpegap_solve(const gpegap_problem* problem, double beta,
                                      gpegap_mode mode, const gpegap_solver_options* options,
                                      gpegap_report** out);
GPEGAP_API void gpegap_report_free(gpegap_report* report);

typedef struct {
  double beta;
  double energy;
  double chemical_potential;
  double kinetic;
  double potential;
  double interaction;
  double residual;
  int iterations;
  long long linear_iterations;
  double wall_seconds;
  double winding;
  double symmetry_defect;
  double tau;
  int converged;
  gpegap_mode mode;
} gpegap_report_summary;

GPEGAP_API gpegap_status gpegap_report_get(const gpegap_report* report,
                                           gpegap_report_summary* out);
GPEGAP_API const char* gpegap_report_message(const gpegap_report* report);
GPEGAP_API size_t gpegap_report_history_size(const gpegap_report* report);
GPEGAP_API gpegap_status gpegap_report_history(const gpegap_report* report, double* out,
                                               size_t count);
GPEGAP_API size_t gpegap_report_field_size(const gpegap_report* report);
GPEGAP_API int gpegap_report_field_is_complex(const gpegap_report* report);
/* im may be NULL; a real field yields zeros. */
GPEGAP_API gpegap_status gpegap_report_field(const gpegap_report* report, double* re,
                                             double* im, size_t count);
/* Raw little-endian float64 plus a text header at path + ".hdr". */
GPEGAP_API gpegap_status gpegap_report_write_field(const gpegap_report* report,
                                                   const gpegap_problem* problem,
                                                   const char* path);

/* Gap sweeps -------------------------------------------------------------- */

typedef struct {
  double beta;
  double E_g, mu_g, E_1, mu_1;
  double delta_E, delta_mu;
  double residual_g, residual_1;
  int iters_g, iters_1;
  gpegap_row_status status;
  double seconds_g, seconds_1;
} gpegap_gap_row;

/* Ascending betas. jobs >= 2 runs ground and excited chains concurrently;
 * GPEGAP_PARTIAL_FAILURE still returns the sweep. */
GPEGAP_API gpegap_status gpegap_gap_sweep(const gpegap_problem* problem, const double* betas,
                                          size_t count, gpegap_mode excited,
                                          const gpegap_solver_options* options, int jobs,
                                          gpegap_sweep** out);
GPEGAP_API void gpegap_sweep_free(gpegap_sweep* sweep);
GPEGAP_API size_t gpegap_sweep_size(const gpegap_sweep* sweep);
GPEGAP_API gpegap_mode gpegap_sweep_mode(const gpegap_sweep* sweep);
GPEGAP_API gpegap_status gpegap_sweep_row(const gpegap_sweep* sweep, size_t index,
                                          gpegap_gap_row* out);
GPEGAP_API const char* gpegap_sweep_row_message(const gpegap_sweep* sweep, size_t index);
GPEGAP_API const char* gpegap_row_status_string(gpegap_row_status status);

typedef struct {
  const char* family;
  int applicable;
  double delta_E;
  double delta_mu;
  int has_stronger;
  double breakpoint_E;
  double breakpoint_mu;
  int limit_zero;
  double diameter;
  double volume;
  double gamma_v;
  const char* note; /* owned by the sweep */
} gpegap_bounds;

GPEGAP_API gpegap_status gpegap_sweep_bounds(gpegap_sweep* sweep, gpegap_bounds* out);
/* Stronger, beta-dependent form of the bound; equals the constant bound without one. */
GPEGAP_API double gpegap_bounds_stronger_E(const gpegap_sweep* sweep, double beta);
GPEGAP_API double gpegap_bounds_stronger_mu(const gpegap_sweep* sweep, double beta);

typedef struct {
  int applicable;
  double min_delta_E;
  double min_delta_mu;
  double margin_E;
  double margin_mu;
  size_t violations;
  size_t stronger_violations;
  gpegap_trend trend_E;
  gpegap_trend trend_mu;
  double fitted_C_E;
  double fitted_C_mu;
  int holds;
  const char* note; /* owned by the sweep */
} gpegap_conjecture;

/* Margins below -slack count as violations; weak_window bounds the fit of C. */
GPEGAP_API gpegap_status gpegap_sweep_check(gpegap_sweep* sweep, double slack,
                                            double weak_window, gpegap_conjecture* out);
/* Per-row margins of the last check; NaN for skipped rows. */
GPEGAP_API gpegap_status gpegap_sweep_row_margins(const gpegap_sweep* sweep, size_t index,
                                                  double* margin_E, double* margin_mu,
                                                  double* stronger_E, double* stronger_mu);
GPEGAP_API const char* gpegap_trend_string(gpegap_trend trend);

typedef struct {
  double weak_max;
  double strong_min;
  int higher_order;
  double fit_min;
  double fit_max;
  int upper_half;
} gpegap_compare_options;

GPEGAP_API void gpegap_compare_options_default(gpegap_compare_options* options);

typedef struct {
  double beta;
  int available;
  gpegap_regime regime;
  int extrapolated;
  double numeric_E, numeric_mu;
  double asym_E, asym_mu;
  double rel_diff_E, rel_diff_mu;
} gpegap_compare_row;

typedef struct {
  int available;
  double slope;
  double intercept;
  double expected;
  double rel_error;
  int points;
  const char* quantity; /* static string */
} gpegap_slope_fit;

/* rows must hold gpegap_sweep_size entries; rows or fit may be NULL. */
GPEGAP_API gpegap_status gpegap_sweep_compare(const gpegap_sweep* sweep,
                                              const gpegap_compare_options* options,
                                              gpegap_compare_row* rows, gpegap_slope_fit* fit);

/* Closed-form asymptotics ------------------------------------------------- */

typedef enum {
  GPEGAP_ASYM_BOX = 0,
  GPEGAP_ASYM_HARMONIC = 1,
  GPEGAP_ASYM_PERIODIC = 2,
  GPEGAP_ASYM_NEUMANN = 3
} gpegap_asym_class;

typedef enum {
  GPEGAP_ASYM_AUTO = 0,
  GPEGAP_ASYM_WEAK = 1,
  GPEGAP_ASYM_STRONG = 2
} gpegap_asym_request;

typedef struct {
  gpegap_asym_class problem;
  int dim;
  double params[3]; /* lengths (box, periodic, Neumann) or gamma (harmonic) */
  double beta;
  gpegap_asym_request regime;
  int higher_order;
  int degenerate; /* < 0 automatic */
  double weak_max;
  double strong_min;
} gpegap_asym_query;

GPEGAP_API void gpegap_asym_query_default(gpegap_asym_query* query);

typedef struct {
  double E_g, mu_g, E_1, mu_1;
  double delta_E, delta_mu;
  gpegap_regime regime;
  int extrapolated;
  int degenerate;
  char note[256];
} gpegap_asym_values;

/* Unavailable quantities are NaN. GPEGAP_UNAVAILABLE when no formula applies. */
GPEGAP_API gpegap_status gpegap_asym_evaluate(const gpegap_asym_query* query,
                                              gpegap_asym_values* out);
GPEGAP_API const char* gpegap_regime_string(gpegap_regime regime);

#ifdef __cplusplus
}
#endif

#endif
