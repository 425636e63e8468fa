#include "common.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

namespace cli {

namespace {

Level g_level = Level::Warn;

int choose_flag(const std::string& value, const std::string& what) {
  if (value == "auto") return -1;
  if (value == "yes" || value == "true" || value == "1") return 1;
  if (value == "no" || value == "false" || value == "0") return 0;
  throw Failure(kConfig, what + " must be auto, yes or no (got '" + value + "')");
}

int default_nodes(int dim) {
  switch (dim) {
    case 1: return 512;
    case 2: return 128;
    default: return 32;
  }
}

}  // namespace

int exit_code(gpegap_status status) {
  switch (status) {
    case GPEGAP_OK: return kOk;
    case GPEGAP_INVALID_ARGUMENT:
    case GPEGAP_UNAVAILABLE:
    case GPEGAP_IO_ERROR: return kConfig;
    case GPEGAP_NOT_CONVERGED:
    case GPEGAP_SYMMETRY_VIOLATED:
    case GPEGAP_LINEAR_SOLVE_FAILED:
    case GPEGAP_NUMERICAL_FAULT: return kNotConverged;
    case GPEGAP_PARTIAL_FAILURE: return kPartial;
    case GPEGAP_INTERNAL_ERROR: return kInternal;
  }
  return kInternal;
}

void check(gpegap_status status, const std::string& context,
           std::initializer_list<gpegap_status> allowed) {
  if (status == GPEGAP_OK) return;
  for (auto a : allowed) {
    if (status == a) return;
  }
  std::string msg = context + ": " + gpegap_status_string(status);
  const std::string detail = gpegap_last_error();
  if (!detail.empty()) msg += " (" + detail + ")";
  throw Failure(exit_code(status), msg);
}

void init_logging() {
  const char* env = std::getenv("GPEGAP_LOG");
  if (!env) return;
  const std::string v = env;
  if (v == "error") g_level = Level::Error;
  else if (v == "warn") g_level = Level::Warn;
  else if (v == "info") g_level = Level::Info;
  else if (v == "debug") g_level = Level::Debug;
}

void log(Level level, const std::string& message) {
  if (level > g_level) return;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::cerr << "gpegap[" << names[static_cast<int>(level)] << "] " << message << '\n';
}

int ProblemOptions::dim() const {
  return bc == "whole-space" ? static_cast<int>(gamma.size()) : static_cast<int>(lengths.size());
}

gpegap_bc parse_bc(const std::string& name) {
  if (name == "dirichlet") return GPEGAP_BC_DIRICHLET;
  if (name == "neumann") return GPEGAP_BC_NEUMANN;
  if (name == "periodic") return GPEGAP_BC_PERIODIC;
  if (name == "whole-space") return GPEGAP_BC_WHOLE_SPACE;
  throw Failure(kConfig, "unknown boundary condition '" + name + "'");
}

gpegap_mode parse_mode(const std::string& name) {
  gpegap_mode mode = GPEGAP_MODE_GROUND;
  if (gpegap_mode_parse(name.c_str(), &mode) != GPEGAP_OK) {
    throw Failure(kConfig, "unknown excited mode '" + name + "'");
  }
  return mode;
}

Problem build_problem(const ProblemOptions& o) {
  const gpegap_bc bc = parse_bc(o.bc);
  const int d = o.dim();
  if (d < 1 || d > 3) {
    throw Failure(kConfig, bc == GPEGAP_BC_WHOLE_SPACE ? "whole space needs 1 to 3 --gamma values"
                                                       : "need 1 to 3 --lengths values");
  }
  std::vector<int> n = o.n;
  if (n.empty()) n.assign(d, default_nodes(d));
  if (n.size() == 1 && d > 1) n.assign(d, n[0]);
  if (static_cast<int>(n.size()) != d) throw Failure(kConfig, "--n needs 1 or dim values");

  gpegap_problem* raw = nullptr;
  if (bc == GPEGAP_BC_WHOLE_SPACE) {
    check(gpegap_problem_new_whole_space(d, o.gamma.data(), o.beta_max, n.data(), &raw),
          "problem");
  } else {
    check(gpegap_problem_new(d, o.lengths.data(), n.data(), bc, &raw), "problem");
  }
  Problem p(raw);

  const std::string& pot = o.potential;
  auto need_gamma = [&] {
    if (static_cast<int>(o.gamma.size()) != d) {
      throw Failure(kConfig, "potential '" + pot + "' needs one --gamma per dimension");
    }
  };
  if (pot == "auto") {
  } else if (pot == "zero") {
    check(gpegap_problem_set_zero(p.get()), "potential");
  } else if (pot == "harmonic") {
    need_gamma();
    check(gpegap_problem_set_harmonic(p.get(), o.gamma.data()), "potential");
  } else if (pot == "harmonic-cosine") {
    const double g = o.gamma.empty() ? 1.0 : o.gamma[0];
    check(gpegap_problem_set_harmonic_cosine(p.get(), g, o.v0, o.k), "potential");
  } else if (pot == "shifted-quadratic") {
    std::vector<double> c = o.center;
    if (c.empty()) {
      std::vector<double> len(d), org(d);
      check(gpegap_problem_domain(p.get(), len.data(), org.data()), "domain");
      for (int j = 0; j < d; ++j) c.push_back(org[j] + 0.5 * len[j]);
    }
    if (static_cast<int>(c.size()) != d) throw Failure(kConfig, "--center needs dim values");
    check(gpegap_problem_set_shifted_quadratic(p.get(), o.v0, c.data()), "potential");
  } else if (pot == "negative-quadratic") {
    check(gpegap_problem_set_negative_quadratic(p.get(), o.coef), "potential");
  } else if (pot == "sine") {
    check(gpegap_problem_set_sine(p.get(), o.amplitude, o.k, o.shift), "potential");
  } else if (pot == "tabulated") {
    if (o.potential_file.empty()) throw Failure(kConfig, "tabulated potential needs --potential-file");
    check(gpegap_problem_load_tabulated(p.get(), o.potential_file.c_str()), "potential");
  } else {
    throw Failure(kConfig, "unknown potential '" + pot + "'");
  }

  const int degen = choose_flag(o.degenerate, "--degenerate");
  if (degen >= 0) check(gpegap_problem_set_degenerate(p.get(), degen), "degenerate");
  const int convex = choose_flag(o.convex, "--convex");
  if (convex >= 0 || o.gamma_v >= 0.0) {
    check(gpegap_problem_set_convexity(p.get(), convex, o.gamma_v), "convexity");
  }
  return p;
}

json describe_problem(const gpegap_problem* problem) {
  const int d = gpegap_problem_dim(problem);
  std::vector<double> len(d), org(d);
  check(gpegap_problem_domain(problem, len.data(), org.data()), "domain");
  static const char* bcs[] = {"dirichlet", "neumann", "periodic", "whole-space"};
  json j;
  j["dim"] = d;
  j["bc"] = bcs[gpegap_problem_bc(problem)];
  j["lengths"] = len;
  j["origin"] = org;
  j["nodes"] = gpegap_problem_nodes(problem);
  j["potential"] = gpegap_problem_describe(problem);
  j["degenerate"] = gpegap_problem_is_degenerate(problem) != 0;
  j["diameter"] = number(gpegap_problem_diameter(problem));
  j["volume"] = number(gpegap_problem_volume(problem));
  return j;
}

std::vector<double> log_betas(double lo, double hi, int count, bool with_zero) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw Failure(kConfig, "log-spaced betas need 0 < beta-min < beta-max and count >= 2");
  }
  std::vector<double> out;
  if (with_zero) out.push_back(0.0);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int k = 0; k < count; ++k) {
    out.push_back(k == count - 1 ? hi : std::pow(10.0, a + (b - a) * k / (count - 1)));
  }
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure(kConfig, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Failure(kConfig, "failed writing '" + path + "'");
}

const char* const kCsvHeader =
    "beta,E_g,mu_g,E_1,mu_1,delta_E,delta_mu,residual_g,residual_1,iters_g,iters_1,status";

std::string csv_row(const gpegap_gap_row& r) {
  std::string s;
  for (double x : {r.beta, r.E_g, r.mu_g, r.E_1, r.mu_1, r.delta_E, r.delta_mu, r.residual_g,
                   r.residual_1}) {
    s += format_double(x);
    s += ',';
  }
  s += std::to_string(r.iters_g) + ',' + std::to_string(r.iters_1) + ',';
  s += gpegap_row_status_string(r.status);
  return s;
}

}  // namespace cli
