#include "gpegap/gaps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "gpegap/error.hpp"

namespace gpegap {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> lengths_of(const ProblemSpec& spec) {
  return {spec.domain.lengths.begin(), spec.domain.lengths.begin() + spec.domain.dim};
}

double rel_diff(double numeric, double reference) {
  return std::abs(numeric - reference) / std::max(std::abs(reference), 1e-300);
}

}  // namespace

std::string_view to_string(RowStatus status) {
  switch (status) {
    case RowStatus::Ok: return "ok";
    case RowStatus::GroundFailed: return "ground-failed";
    case RowStatus::ExcitedFailed: return "excited-failed";
    case RowStatus::BothFailed: return "both-failed";
    case RowStatus::NonPositiveGap: return "nonpositive-gap";
  }
  return "unknown";
}

Fingerprint fingerprint(const Discretization& disc, ExcitedMode mode) {
  Fingerprint fp;
  fp.spec = disc.spec;
  fp.degenerate = is_degenerate(disc.spec);
  fp.mode = mode;
  fp.potential = describe(disc.spec.potential);
  fp.diameter = disc.spec.domain.diameter();
  fp.volume = disc.spec.domain.volume();
  return fp;
}

bool GapCurve::all_ok() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const GapRow& r) { return r.status == RowStatus::Ok; });
}

GapCurve build_gap_curve(const Fingerprint& problem, const std::vector<SolveReport>& ground,
                         const std::vector<SolveReport>& excited, const std::vector<double>& betas,
                         bool allow_failures) {
  require(ground.size() == betas.size() && excited.size() == betas.size(),
          "ground, excited and beta lists must have equal length");
  for (std::size_t k = 1; k < betas.size(); ++k) {
    require(betas[k] > betas[k - 1], "beta list must be strictly ascending");
  }
  GapCurve curve;
  curve.problem = problem;
  for (std::size_t k = 0; k < betas.size(); ++k) {
    const auto& g = ground[k];
    const auto& e = excited[k];
    if (!allow_failures && (!g.converged() || !e.converged())) {
      fail(ErrorCode::NotConverged,
           "solve at beta = " + std::to_string(betas[k]) + " did not converge");
    }
    GapRow row;
    row.beta = betas[k];
    row.E_g = g.energy.energy;
    row.mu_g = g.energy.chemical_potential;
    row.E_1 = e.energy.energy;
    row.mu_1 = e.energy.chemical_potential;
    row.delta_E = row.E_1 - row.E_g;
    row.delta_mu = row.mu_1 - row.mu_g;
    row.residual_g = g.residual;
    row.residual_1 = e.residual;
    row.iters_g = g.iterations;
    row.iters_1 = e.iterations;
    if (!g.converged() && !e.converged()) {
      row.status = RowStatus::BothFailed;
      row.message = g.message + "; " + e.message;
    } else if (!g.converged()) {
      row.status = RowStatus::GroundFailed;
      row.message = g.message;
    } else if (!e.converged()) {
      row.status = RowStatus::ExcitedFailed;
      row.message = e.message;
    } else if (!(row.delta_E > 0.0) || !(row.delta_mu > 0.0)) {
      row.status = RowStatus::NonPositiveGap;
      row.message = "excited state does not lie above the ground state";
    }
    curve.rows.push_back(std::move(row));
  }
  return curve;
}

std::string_view to_string(BoundFamily family) {
  switch (family) {
    case BoundFamily::DirichletNondegenerate: return "dirichlet-nondegenerate";
    case BoundFamily::DirichletDegenerate: return "dirichlet-degenerate";
    case BoundFamily::WholeSpace: return "whole-space";
    case BoundFamily::WholeSpaceDegenerate: return "whole-space-degenerate";
    case BoundFamily::Periodic: return "periodic";
    case BoundFamily::Neumann: return "neumann";
  }
  return "unknown";
}

double ConjectureBounds::stronger_E(double beta) const {
  if (!has_stronger || beta <= breakpoint_E) return delta_E;
  return 4.0 * std::sqrt(beta) / (3.0 * diameter * std::sqrt(volume));
}

double ConjectureBounds::stronger_mu(double beta) const {
  if (!has_stronger || beta <= breakpoint_mu) return delta_mu;
  return 2.0 * std::sqrt(beta) / (diameter * std::sqrt(volume));
}

ConjectureBounds conjecture_bounds(const Fingerprint& problem, std::optional<bool> convex,
                                   std::optional<double> gamma_v) {
  const auto& spec = problem.spec;
  ConjectureBounds b;
  b.diameter = problem.diameter;
  b.volume = problem.volume;
  const double D2 = b.diameter * b.diameter;
  const bool is_conv = convex ? *convex : is_convex(spec.potential).value_or(false);
  switch (spec.bc) {
    case Boundary::Dirichlet:
      if (problem.degenerate) {
        b.family = BoundFamily::DirichletDegenerate;
        b.delta_E = kPi * kPi / (2.0 * D2);
        b.delta_mu = 3.0 * kPi * kPi / (8.0 * D2);
        if (spec.domain.dim != 2) b.note = "degenerate bound stated for d = 2 only";
      } else {
        b.family = BoundFamily::DirichletNondegenerate;
        b.delta_E = b.delta_mu = 1.5 * kPi * kPi / D2;
        b.has_stronger = true;
        const double pi4 = std::pow(kPi, 4);
        b.breakpoint_E = 81.0 * pi4 * b.volume / (64.0 * D2);
        b.breakpoint_mu = 9.0 * pi4 * b.volume / (16.0 * D2);
      }
      break;
    case Boundary::TruncatedWholeSpace: {
      const auto modulus = gamma_v ? gamma_v : convexity_modulus(spec.potential);
      if (!modulus || !(*modulus > 0.0)) {
        b.applicable = false;
        b.family = problem.degenerate ? BoundFamily::WholeSpaceDegenerate : BoundFamily::WholeSpace;
        b.note = "whole-space bounds need a strictly convex potential (gamma_v > 0)";
        return b;
      }
      b.gamma_v = *modulus;
      if (problem.degenerate) {
        b.family = BoundFamily::WholeSpaceDegenerate;
        b.delta_E = b.delta_mu = b.gamma_v;
        b.limit_zero = true;
        b.note = "bound gamma_v - C beta on the weak window; gaps vanish as beta grows";
      } else {
        b.family = BoundFamily::WholeSpace;
        b.delta_E = b.delta_mu = std::numbers::sqrt2 / 2.0 * b.gamma_v;
      }
      break;
    }
    case Boundary::Periodic:
      b.family = BoundFamily::Periodic;
      b.delta_E = b.delta_mu = 2.0 * kPi * kPi / D2;
      break;
    case Boundary::Neumann:
      b.family = BoundFamily::Neumann;
      b.delta_E = b.delta_mu = 0.5 * kPi * kPi / D2;
      break;
  }
  if (!is_conv) {
    b.applicable = false;
    b.note = "not applicable: the bounds are conjectured for convex potentials only, and "
             "non-convex potentials admit smaller gaps";
  }
  return b;
}

std::string_view to_string(Trend trend) {
  switch (trend) {
    case Trend::Increasing: return "increasing";
    case Trend::Decreasing: return "decreasing";
    case Trend::Constant: return "constant";
    case Trend::Neither: return "neither";
  }
  return "unknown";
}

Trend classify_trend(const std::vector<double>& values, double tol) {
  if (values.size() < 2) return Trend::Constant;
  bool up = true;
  bool down = true;
  bool flat = true;
  for (std::size_t k = 1; k < values.size(); ++k) {
    const double d = values[k] - values[k - 1];
    const double scale = tol * std::max(1.0, std::abs(values[k - 1]));
    if (!(d > scale)) up = false;
    if (!(d < -scale)) down = false;
    if (std::abs(d) > scale) flat = false;
  }
  if (flat) return Trend::Constant;
  if (up) return Trend::Increasing;
  if (down) return Trend::Decreasing;
  return Trend::Neither;
}

ConjectureReport check_conjecture(const GapCurve& curve, const ConjectureBounds& bounds,
                                  double slack, double weak_window) {
  require(!curve.rows.empty(), "gap curve is empty");
  ConjectureReport rep;
  rep.applicable = bounds.applicable;
  rep.note = bounds.note;
  rep.min_delta_E = std::numeric_limits<double>::infinity();
  rep.min_delta_mu = std::numeric_limits<double>::infinity();
  std::vector<double> dE, dmu;
  for (const auto& row : curve.rows) {
    if (row.status != RowStatus::Ok) continue;
    dE.push_back(row.delta_E);
    dmu.push_back(row.delta_mu);
    rep.min_delta_E = std::min(rep.min_delta_E, row.delta_E);
    rep.min_delta_mu = std::min(rep.min_delta_mu, row.delta_mu);
  }
  rep.trend_E = classify_trend(dE);
  rep.trend_mu = classify_trend(dmu);
  if (dE.empty()) {
    rep.holds = false;
    rep.note = "no converged rows";
    return rep;
  }
  if (!bounds.applicable) {
    rep.holds = false;
    return rep;
  }
  const std::size_t n = curve.rows.size();
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  rep.row_margin_E.assign(n, nan);
  rep.row_margin_mu.assign(n, nan);
  if (bounds.family == BoundFamily::WholeSpaceDegenerate) {
    // delta >= gamma_v - C beta for some C >= 0 on the weak window, and decay.
    for (std::size_t k = 0; k < n; ++k) {
      const GapRow& row = curve.rows[k];
      if (row.status != RowStatus::Ok || row.beta > weak_window) continue;
      const double mE = row.delta_E - bounds.gamma_v;
      const double mmu = row.delta_mu - bounds.gamma_v;
      rep.row_margin_E[k] = mE;
      rep.row_margin_mu[k] = mmu;
      if (row.beta == 0.0) {
        if (mE < -slack) rep.violations.push_back({row.beta, true, mE});
        if (mmu < -slack) rep.violations.push_back({row.beta, false, mmu});
      } else {
        rep.fitted_C_E = std::max(rep.fitted_C_E, -mE / row.beta);
        rep.fitted_C_mu = std::max(rep.fitted_C_mu, -mmu / row.beta);
      }
    }
    rep.margin_E = rep.margin_mu = 0.0;
    rep.holds = rep.violations.empty();
    if (curve.rows.size() >= 2 && rep.trend_E != Trend::Decreasing) {
      rep.note = "delta_E is not decreasing over the sampled window";
    }
    return rep;
  }
  rep.margin_E = rep.min_delta_E - bounds.delta_E;
  rep.margin_mu = rep.min_delta_mu - bounds.delta_mu;
  if (bounds.has_stronger) {
    rep.row_stronger_margin_E.assign(n, nan);
    rep.row_stronger_margin_mu.assign(n, nan);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const GapRow& row = curve.rows[k];
    if (row.status != RowStatus::Ok) continue;
    const double mE = row.delta_E - bounds.delta_E;
    const double mmu = row.delta_mu - bounds.delta_mu;
    rep.row_margin_E[k] = mE;
    rep.row_margin_mu[k] = mmu;
    if (mE < -slack) rep.violations.push_back({row.beta, true, mE});
    if (mmu < -slack) rep.violations.push_back({row.beta, false, mmu});
    if (bounds.has_stronger) {
      const double sE = row.delta_E - bounds.stronger_E(row.beta);
      const double smu = row.delta_mu - bounds.stronger_mu(row.beta);
      rep.row_stronger_margin_E[k] = sE;
      rep.row_stronger_margin_mu[k] = smu;
      if (sE < -slack) rep.stronger_violations.push_back({row.beta, true, sE});
      if (smu < -slack) rep.stronger_violations.push_back({row.beta, false, smu});
    }
  }
  rep.holds = rep.violations.empty();
  return rep;
}

std::optional<asym::Values> asymptotic_gaps(const Fingerprint& problem, double beta,
                                            const CompareOptions& opts) {
  const auto& spec = problem.spec;
  const int d = spec.domain.dim;
  const bool weak = beta <= opts.guard.weak_max;
  const bool strong = beta >= opts.guard.strong_min;
  const auto L = lengths_of(spec);
  const bool zero = std::holds_alternative<potential::Zero>(spec.potential);
  try {
    switch (spec.bc) {
      case Boundary::Periodic:
        if (!zero) return std::nullopt;
        return asym::periodic_exact(L, beta);
      case Boundary::Dirichlet:
        if (!zero) return std::nullopt;
        if (problem.degenerate) {
          if (weak) return asym::box_weak(L, beta, true, opts.guard);
          if (strong && d == 2 && beta > 0.0) return asym::box_degenerate_strong_2d(L, beta, opts.guard);
          return std::nullopt;
        }
        if (weak) {
          auto v = asym::box_weak(L, beta, false, opts.guard);
          const auto second = asym::box_gap_weak_secondorder(L, beta, opts.guard);
          v.delta_E = second.delta_E;
          v.delta_mu = second.delta_mu;
          v.regime = second.regime;
          return v;
        }
        if (strong) return asym::box_strong(L, beta, opts.guard);
        return std::nullopt;
      case Boundary::Neumann:
        if (!zero) return std::nullopt;
        if (weak) return asym::neumann_asym(L, beta, problem.degenerate, asym::NeumannRegime::Weak, opts.guard);
        if (strong && beta > 0.0 && (!problem.degenerate || d == 2)) {
          return asym::neumann_asym(L, beta, problem.degenerate, asym::NeumannRegime::Strong,
                                    opts.guard);
        }
        return std::nullopt;
      case Boundary::TruncatedWholeSpace: {
        const auto* h = std::get_if<potential::Harmonic>(&spec.potential);
        if (!h) return std::nullopt;
        if (problem.degenerate) {
          if (weak) return asym::harmonic_weak(h->gamma, beta, true, opts.guard);
          if (strong && d == 2 && beta > 0.0) {
            return asym::harmonic_degenerate_strong_2d(h->gamma, beta, opts.guard);
          }
          return std::nullopt;
        }
        if (weak) return asym::harmonic_weak(h->gamma, beta, false, opts.guard);
        if (strong && beta > 0.0) {
          return asym::harmonic_strong(h->gamma, beta, opts.higher_order, opts.guard);
        }
        return std::nullopt;
      }
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  return std::nullopt;
}

std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, "line fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0.0, "line fit needs distinct abscissae");
  const double slope = sxy / sxx;
  return {my - slope * mx, slope};
}

Comparison compare_numeric_asymptotic(const GapCurve& curve, const CompareOptions& opts) {
  Comparison out;
  const auto& problem = curve.problem;
  for (const auto& row : curve.rows) {
    ComparisonRow c;
    c.beta = row.beta;
    c.numeric_E = row.delta_E;
    c.numeric_mu = row.delta_mu;
    const auto v = row.status == RowStatus::Ok ? asymptotic_gaps(problem, row.beta, opts)
                                               : std::nullopt;
    if (v && std::isfinite(v->delta_E) && std::isfinite(v->delta_mu)) {
      c.available = true;
      c.regime = v->regime;
      c.extrapolated = v->extrapolated;
      c.asym_E = v->delta_E;
      c.asym_mu = v->delta_mu;
      c.rel_diff_E = rel_diff(c.numeric_E, c.asym_E);
      c.rel_diff_mu = rel_diff(c.numeric_mu, c.asym_mu);
    }
    out.rows.push_back(c);
  }

  const auto& spec = problem.spec;
  const bool log_box = problem.degenerate && spec.domain.dim == 2 &&
                       std::holds_alternative<potential::Zero>(spec.potential) &&
                       (spec.bc == Boundary::Dirichlet || spec.bc == Boundary::Neumann);
  const auto* harm = std::get_if<potential::Harmonic>(&spec.potential);
  const bool log_harm = problem.degenerate && spec.domain.dim == 2 && harm &&
                        spec.bc == Boundary::TruncatedWholeSpace;
  if (!log_box && !log_harm) return out;

  std::vector<double> x, y;
  for (const auto& row : curve.rows) {
    if (row.status != RowStatus::Ok || !(row.beta > 0.0)) continue;
    if (row.beta < opts.fit_min) continue;
    if (opts.fit_max > 0.0 && row.beta > opts.fit_max) continue;
    x.push_back(std::log(row.beta));
    y.push_back(log_harm ? row.delta_E / std::sqrt(kPi / row.beta) : row.delta_E);
  }
  if (opts.upper_half && x.size() >= 4) {
    const std::size_t skip = x.size() / 2;
    x.erase(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(skip));
    y.erase(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(skip));
  }
  SlopeFit& fit = out.fit;
  if (log_box) {
    const double L = spec.domain.lengths[0];
    fit.expected = kPi / (2.0 * L * L);
    fit.quantity = "delta_E vs ln(beta)";
  } else {
    fit.expected = 0.5 * harm->gamma[0];
    fit.quantity = "delta_E / sqrt(pi/beta) vs ln(beta)";
  }
  if (x.size() < 2) return out;
  const auto [a, b] = fit_line(x, y);
  fit.available = true;
  fit.intercept = a;
  fit.slope = b;
  fit.points = static_cast<int>(x.size());
  fit.rel_error = rel_diff(b, fit.expected);
  return out;
}

SweepResult run_gap_sweep(const Discretization& disc, const std::vector<double>& betas,
                          const SolverConfig& cfg, ExcitedMode excited, int jobs) {
  require(!betas.empty(), "beta list is empty");
  require(excited != ExcitedMode::None, "gap sweep needs an excited mode");
  require(jobs >= 1, "jobs must be positive");
  for (std::size_t k = 1; k < betas.size(); ++k) {
    require(betas[k] > betas[k - 1], "beta list must be strictly ascending");
  }
  SolverConfig gcfg = cfg;
  gcfg.mode = ExcitedMode::None;
  SolverConfig ecfg = cfg;
  ecfg.mode = excited;

  SweepResult res;
  res.ground.resize(betas.size());
  res.excited.resize(betas.size());
  const std::size_t chunks =
      std::min<std::size_t>(betas.size(), jobs > 2 ? static_cast<std::size_t>(jobs / 2) : 1);

  struct Task {
    const SolverConfig* cfg;
    std::vector<SolveReport>* out;
    std::size_t begin, end;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = betas.size() * c / chunks;
    const std::size_t end = betas.size() * (c + 1) / chunks;
    tasks.push_back({&gcfg, &res.ground, begin, end});
    tasks.push_back({&ecfg, &res.excited, begin, end});
  }
  auto run = [&](const Task& t) {
    std::vector<double> part(betas.begin() + static_cast<std::ptrdiff_t>(t.begin),
                             betas.begin() + static_cast<std::ptrdiff_t>(t.end));
    auto reports = continue_in_beta(disc, part, *t.cfg);
    for (std::size_t k = 0; k < reports.size(); ++k) (*t.out)[t.begin + k] = std::move(reports[k]);
  };
  if (jobs == 1) {
    for (const auto& t : tasks) run(t);
  } else {
    std::vector<std::thread> pool;
    for (const auto& t : tasks) pool.emplace_back(run, std::cref(t));
    for (auto& th : pool) th.join();
  }
  res.curve = build_gap_curve(fingerprint(disc, excited), res.ground, res.excited, betas, true);
  return res;
}

}  // namespace gpegap
