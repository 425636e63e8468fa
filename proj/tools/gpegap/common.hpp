#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gpegap/gpegap.h"
#include "json.hpp"

namespace cli {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kInternal = 1, kConfig = 2, kNotConverged = 3, kPartial = 4 };

/// Carries an exit code up to main.
struct Failure : std::runtime_error {
  Failure(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

int exit_code(gpegap_status status);
/// Throws Failure unless status is OK (or one of `allowed`).
void check(gpegap_status status, const std::string& context,
           std::initializer_list<gpegap_status> allowed = {});

struct ProblemDeleter {
  void operator()(gpegap_problem* p) const { gpegap_problem_free(p); }
};
struct ReportDeleter {
  void operator()(gpegap_report* r) const { gpegap_report_free(r); }
};
struct SweepDeleter {
  void operator()(gpegap_sweep* s) const { gpegap_sweep_free(s); }
};
using Problem = std::unique_ptr<gpegap_problem, ProblemDeleter>;
using Report = std::unique_ptr<gpegap_report, ReportDeleter>;
using Sweep = std::unique_ptr<gpegap_sweep, SweepDeleter>;

// Logging ---------------------------------------------------------------------

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// Reads GPEGAP_LOG (error, warn, info, debug); warn by default.
void init_logging();
void log(Level level, const std::string& message);

// Problem description ---------------------------------------------------------

struct ProblemOptions {
  std::string bc = "dirichlet";
  std::vector<double> lengths{2.0};
  std::vector<double> gamma;
  std::string potential = "auto";
  double v0 = 1.0;
  double k = 1.0;
  double coef = -10.0;
  double amplitude = 10.0;
  double shift = 1.0;
  std::vector<double> center;
  std::string potential_file;
  std::vector<int> n;
  double beta_max = 1000.0;  ///< truncation box size for whole space
  std::string degenerate = "auto";
  std::string convex = "auto";
  double gamma_v = -1.0;

  int dim() const;
};

Problem build_problem(const ProblemOptions& opts);
json describe_problem(const gpegap_problem* problem);

struct SolverOptions {
  gpegap_solver_options raw{};
  SolverOptions() { gpegap_solver_options_default(&raw); }
};

gpegap_bc parse_bc(const std::string& name);
gpegap_mode parse_mode(const std::string& name);

// Beta lists ------------------------------------------------------------------

/// Log-spaced values in [lo, hi], with 0 prepended when `with_zero`.
std::vector<double> log_betas(double lo, double hi, int count, bool with_zero);

// Output ------------------------------------------------------------------------

/// %.17g; NaN and infinities as nan/inf.
std::string format_double(double x);
/// JSON number or null for non-finite values.
json number(double x);
void write_text(const std::string& path, const std::string& text);

extern const char* const kCsvHeader;
std::string csv_row(const gpegap_gap_row& row);

}  // namespace cli
