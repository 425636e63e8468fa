#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

namespace cli {

namespace {

json conjecture_json(const gpegap_bounds& b, const gpegap_conjecture& c) {
  json j;
  j["family"] = b.family;
  j["applicable"] = b.applicable != 0;
  j["bound_delta_E"] = number(b.delta_E);
  j["bound_delta_mu"] = number(b.delta_mu);
  if (b.has_stronger) {
    j["stronger_breakpoint_E"] = number(b.breakpoint_E);
    j["stronger_breakpoint_mu"] = number(b.breakpoint_mu);
  }
  if (b.gamma_v > 0.0) j["gamma_v"] = number(b.gamma_v);
  j["limit_zero"] = b.limit_zero != 0;
  j["min_delta_E_over_sampled_beta"] = number(c.min_delta_E);
  j["min_delta_mu_over_sampled_beta"] = number(c.min_delta_mu);
  j["margin_E"] = number(c.margin_E);
  j["margin_mu"] = number(c.margin_mu);
  j["violations"] = c.violations;
  if (b.has_stronger) j["stronger_violations"] = c.stronger_violations;
  j["trend_E"] = gpegap_trend_string(c.trend_E);
  j["trend_mu"] = gpegap_trend_string(c.trend_mu);
  if (b.limit_zero) {
    j["fitted_C_E"] = number(c.fitted_C_E);
    j["fitted_C_mu"] = number(c.fitted_C_mu);
  }
  j["holds"] = c.holds != 0;
  j["note"] = c.note;
  return j;
}

gpegap_asym_class parse_class(const std::string& name) {
  if (name == "box") return GPEGAP_ASYM_BOX;
  if (name == "harmonic") return GPEGAP_ASYM_HARMONIC;
  if (name == "periodic") return GPEGAP_ASYM_PERIODIC;
  if (name == "neumann") return GPEGAP_ASYM_NEUMANN;
  throw Failure(kConfig, "unknown problem class '" + name + "'");
}

gpegap_asym_request parse_regime(const std::string& name) {
  if (name == "auto") return GPEGAP_ASYM_AUTO;
  if (name == "weak") return GPEGAP_ASYM_WEAK;
  if (name == "strong") return GPEGAP_ASYM_STRONG;
  throw Failure(kConfig, "regime must be auto, weak or strong (got '" + name + "')");
}

}  // namespace

std::vector<double> BetaArgs::resolve() const {
  if (!betas.empty()) return betas;
  return log_betas(beta_min, beta_max, beta_count, !no_zero);
}

std::string sweep_csv(const gpegap_sweep* sweep) {
  std::string out = kCsvHeader;
  out += '\n';
  for (std::size_t k = 0; k < gpegap_sweep_size(sweep); ++k) {
    gpegap_gap_row row;
    check(gpegap_sweep_row(sweep, k, &row), "sweep row");
    out += csv_row(row);
    out += '\n';
  }
  return out;
}

json sweep_report(gpegap_sweep* sweep, const gpegap_problem* problem, double slack,
                  double weak_window, bool timing) {
  json j;
  j["gpegap"] = gpegap_version();
  j["problem"] = describe_problem(problem);
  j["mode"] = gpegap_mode_string(gpegap_sweep_mode(sweep));

  gpegap_bounds bounds;
  check(gpegap_sweep_bounds(sweep, &bounds), "bounds");
  gpegap_conjecture conj;
  check(gpegap_sweep_check(sweep, slack, weak_window, &conj), "conjecture check");
  j["conjecture"] = conjecture_json(bounds, conj);
  j["conjecture"]["slack"] = slack;
  if (!bounds.applicable && bounds.note[0]) j["conjecture"]["bound_note"] = bounds.note;

  json rows = json::array();
  for (std::size_t k = 0; k < gpegap_sweep_size(sweep); ++k) {
    gpegap_gap_row row;
    check(gpegap_sweep_row(sweep, k, &row), "sweep row");
    double mE = NAN, mmu = NAN, sE = NAN, smu = NAN;
    if (bounds.applicable) {
      check(gpegap_sweep_row_margins(sweep, k, &mE, &mmu, &sE, &smu), "row margins");
    }
    json r;
    r["beta"] = row.beta;
    r["status"] = gpegap_row_status_string(row.status);
    const std::string msg = gpegap_sweep_row_message(sweep, k);
    if (!msg.empty()) r["message"] = msg;
    r["margin_E"] = number(mE);
    r["margin_mu"] = number(mmu);
    if (bounds.has_stronger) {
      r["stronger_margin_E"] = number(sE);
      r["stronger_margin_mu"] = number(smu);
    }
    if (timing) {
      r["seconds_g"] = row.seconds_g;
      r["seconds_1"] = row.seconds_1;
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

int cmd_solve(const SolveArgs& a) {
  Problem problem = build_problem(a.problem);
  const gpegap_mode mode = parse_mode(a.excited);
  log(Level::Info, "solving " + std::string(gpegap_mode_string(mode)) + " state at beta = " +
                       format_double(a.beta));
  gpegap_report* raw = nullptr;
  const gpegap_status st = gpegap_solve(problem.get(), a.beta, mode, &a.solver.raw, &raw);
  if (!raw) check(st, "solve");
  Report report(raw);

  gpegap_report_summary s;
  check(gpegap_report_get(report.get(), &s), "report");
  json j;
  j["gpegap"] = gpegap_version();
  j["command"] = "solve";
  j["problem"] = describe_problem(problem.get());
  j["beta"] = s.beta;
  j["mode"] = gpegap_mode_string(s.mode);
  j["status"] = s.converged ? "converged" : "not-converged";
  const std::string msg = gpegap_report_message(report.get());
  if (!msg.empty()) j["message"] = msg;
  j["energy"] = number(s.energy);
  j["chemical_potential"] = number(s.chemical_potential);
  j["kinetic"] = number(s.kinetic);
  j["potential"] = number(s.potential);
  j["interaction"] = number(s.interaction);
  j["residual"] = number(s.residual);
  j["iterations"] = s.iterations;
  j["linear_iterations"] = s.linear_iterations;
  j["tau"] = number(s.tau);
  j["complex"] = gpegap_report_field_is_complex(report.get()) != 0;
  if (s.mode == GPEGAP_MODE_VORTEX) j["winding"] = number(s.winding);
  if (s.mode == GPEGAP_MODE_ODD || s.mode == GPEGAP_MODE_VORTEX) {
    j["symmetry_defect"] = number(s.symmetry_defect);
  }
  std::vector<double> hist(gpegap_report_history_size(report.get()));
  if (!hist.empty()) {
    check(gpegap_report_history(report.get(), hist.data(), hist.size()), "history");
    j["history_length"] = hist.size();
    if (a.history) {
      json h = json::array();
      for (double e : hist) h.push_back(number(e));
      j["energy_history"] = std::move(h);
    }
  }
  if (!a.field.empty()) {
    check(gpegap_report_write_field(report.get(), problem.get(), a.field.c_str()), "field");
    j["field"] = a.field;
  }
  if (a.timing) j["wall_seconds"] = s.wall_seconds;

  const std::string text = j.dump(2) + "\n";
  if (a.output.empty() || a.output == "-") {
    std::cout << text;
  } else {
    write_text(a.output, text);
  }
  if (!s.converged) {
    log(Level::Error, "solve did not converge" + (msg.empty() ? "" : ": " + msg));
    return kNotConverged;
  }
  return kOk;
}

int cmd_gap_sweep(const SweepArgs& a) {
  Problem problem = build_problem(a.problem);
  const std::vector<double> betas = a.beta.resolve();
  const gpegap_mode mode = parse_mode(a.excited);
  if (mode == GPEGAP_MODE_GROUND) throw Failure(kConfig, "gap sweep needs an excited mode");
  log(Level::Info, "sweeping " + std::to_string(betas.size()) + " beta values");

  gpegap_sweep* raw = nullptr;
  const gpegap_status st = gpegap_gap_sweep(problem.get(), betas.data(), betas.size(), mode,
                                            &a.solver.raw, a.jobs, &raw);
  if (!raw) check(st, "gap sweep");
  Sweep sweep(raw);

  const std::string csv = sweep_csv(sweep.get());
  if (a.csv.empty() || a.csv == "-") {
    std::cout << csv;
  } else {
    write_text(a.csv, csv);
  }

  std::string json_path = a.json_path;
  if (json_path.empty() && !a.csv.empty() && a.csv != "-") {
    const auto dot = a.csv.rfind('.');
    const auto slash = a.csv.rfind('/');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    json_path = (has_ext ? a.csv.substr(0, dot) : a.csv) + ".json";
  }
  if (!json_path.empty()) {
    json j = sweep_report(sweep.get(), problem.get(), a.slack, a.weak_window, a.timing);
    j["command"] = "gap-sweep";
    if (a.compare) {
      gpegap_compare_options co;
      gpegap_compare_options_default(&co);
      co.fit_min = a.fit_min;
      co.fit_max = a.fit_max;
      std::vector<gpegap_compare_row> rows(gpegap_sweep_size(sweep.get()));
      gpegap_slope_fit fit;
      check(gpegap_sweep_compare(sweep.get(), &co, rows.data(), &fit), "comparison");
      json cmp = json::array();
      for (const auto& r : rows) {
        json c;
        c["beta"] = r.beta;
        c["available"] = r.available != 0;
        if (r.available) {
          c["regime"] = gpegap_regime_string(r.regime);
          c["extrapolated"] = r.extrapolated != 0;
          c["asym_delta_E"] = number(r.asym_E);
          c["asym_delta_mu"] = number(r.asym_mu);
          c["rel_diff_E"] = number(r.rel_diff_E);
          c["rel_diff_mu"] = number(r.rel_diff_mu);
        }
        cmp.push_back(std::move(c));
      }
      j["comparison"] = std::move(cmp);
      if (fit.available) {
        j["log_fit"] = {{"quantity", fit.quantity},     {"slope", fit.slope},
                        {"intercept", fit.intercept},   {"expected", fit.expected},
                        {"rel_error", fit.rel_error},   {"points", fit.points}};
      }
    }
    write_text(json_path, j.dump(2) + "\n");
  }
  if (st == GPEGAP_PARTIAL_FAILURE) {
    log(Level::Error, "some beta values failed; see the status column");
    return kPartial;
  }
  return kOk;
}

int cmd_asym(const AsymArgs& a) {
  gpegap_asym_query q;
  gpegap_asym_query_default(&q);
  q.problem = parse_class(a.problem_class);
  const std::vector<double>& params = q.problem == GPEGAP_ASYM_HARMONIC ? a.gamma : a.lengths;
  if (params.empty() || params.size() > 3) {
    throw Failure(kConfig, q.problem == GPEGAP_ASYM_HARMONIC ? "need 1 to 3 --gamma values"
                                                            : "need 1 to 3 --lengths values");
  }
  q.dim = static_cast<int>(params.size());
  for (int j = 0; j < q.dim; ++j) q.params[j] = params[j];
  q.regime = parse_regime(a.regime);
  q.higher_order = a.higher_order ? 1 : 0;
  q.degenerate = a.degenerate == "auto" ? -1 : (a.degenerate == "yes" ? 1 : 0);
  if (a.degenerate != "auto" && a.degenerate != "yes" && a.degenerate != "no") {
    throw Failure(kConfig, "--degenerate must be auto, yes or no");
  }
  q.weak_max = a.weak_max;
  q.strong_min = a.strong_min;

  std::ostringstream text;
  text << "# " << a.problem_class << " dim " << q.dim << '\n';
  text << "beta regime E_g mu_g E_1 mu_1 delta_E delta_mu flags\n";
  json rows = json::array();
  for (double beta : a.beta) {
    q.beta = beta;
    gpegap_asym_values v;
    check(gpegap_asym_evaluate(&q, &v), "asym");
    if (v.extrapolated && !a.force) {
      throw Failure(kConfig, "beta = " + format_double(beta) + " lies outside the " +
                                 gpegap_regime_string(v.regime) +
                                 " regime window; pass --force to evaluate anyway");
    }
    text << format_double(beta) << ' ' << gpegap_regime_string(v.regime);
    for (double x : {v.E_g, v.mu_g, v.E_1, v.mu_1, v.delta_E, v.delta_mu}) {
      text << ' ' << format_double(x);
    }
    text << ' ' << (v.extrapolated ? "extrapolated" : "-") << '\n';
    json r;
    r["beta"] = beta;
    r["regime"] = gpegap_regime_string(v.regime);
    r["extrapolated"] = v.extrapolated != 0;
    r["degenerate"] = v.degenerate != 0;
    r["E_g"] = number(v.E_g);
    r["mu_g"] = number(v.mu_g);
    r["E_1"] = number(v.E_1);
    r["mu_1"] = number(v.mu_1);
    r["delta_E"] = number(v.delta_E);
    r["delta_mu"] = number(v.delta_mu);
    if (v.note[0]) r["note"] = v.note;
    rows.push_back(std::move(r));
  }
  std::cout << text.str();
  if (!a.json_path.empty()) {
    json j;
    j["gpegap"] = gpegap_version();
    j["command"] = "asym";
    j["class"] = a.problem_class;
    j["params"] = params;
    j["rows"] = std::move(rows);
    write_text(a.json_path, j.dump(2) + "\n");
  }
  return kOk;
}

}  // namespace cli
