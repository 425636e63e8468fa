#include "gpegap/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "gpegap/asymptotics.hpp"
#include "gpegap/error.hpp"
#include "gpegap/linear.hpp"

extern "C" {
void dgttrf_(const int* n, double* dl, double* d, double* du, double* du2, int* ipiv, int* info);
void dgttrs_(const char* trans, const int* n, const int* nrhs, const double* dl, const double* d,
             const double* du, const double* du2, const int* ipiv, double* b, const int* ldb,
             int* info, std::size_t trans_len);
}

namespace gpegap {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double max_density(const WaveField& phi) {
  double m = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    double r = phi.re[i] * phi.re[i];
    if (!phi.real_valued()) r += phi.im[i] * phi.im[i];
    m = std::max(m, r);
  }
  return m;
}

double max_difference(const WaveField& a, const WaveField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = std::abs(a.re[i] - b.re[i]);
    if (!a.real_valued() || !b.real_valued()) {
      const double ai = a.real_valued() ? 0.0 : a.im[i];
      const double bi = b.real_valued() ? 0.0 : b.im[i];
      d = std::hypot(d, ai - bi);
    }
    m = std::max(m, d);
  }
  return m;
}

std::optional<std::vector<double>> trap_frequencies(const PotentialSpec& spec, int dim) {
  if (const auto* h = std::get_if<potential::Harmonic>(&spec)) return h->gamma;
  if (const auto* h = std::get_if<potential::HarmonicPlusCosine>(&spec)) {
    return std::vector<double>(dim, h->gamma);
  }
  return std::nullopt;
}

// Factor of the default guess along one axis.
double ground_factor(const Discretization& disc, int a, double x,
                     const std::optional<std::vector<double>>& gamma) {
  const auto& dom = disc.grid.domain();
  const double s = (x - dom.origin[a]) / dom.lengths[a];
  switch (disc.spec.bc) {
    case Boundary::Dirichlet: return std::sin(kPi * s);
    case Boundary::TruncatedWholeSpace:
      if (gamma) return std::exp(-0.5 * (*gamma)[a] * x * x);
      return std::sin(kPi * s);
    case Boundary::Neumann:
    case Boundary::Periodic: return 1.0;
  }
  return 1.0;
}

double odd_factor(const Discretization& disc, double x,
                  const std::optional<std::vector<double>>& gamma) {
  const auto& dom = disc.grid.domain();
  const double s = (x - dom.origin[0]) / dom.lengths[0];
  switch (disc.spec.bc) {
    case Boundary::Dirichlet:
    case Boundary::Periodic: return std::sin(2.0 * kPi * s);
    case Boundary::TruncatedWholeSpace:
      if (gamma) return x * std::exp(-0.5 * (*gamma)[0] * x * x);
      return std::sin(2.0 * kPi * s);
    case Boundary::Neumann: return std::cos(kPi * s);
  }
  return 0.0;
}

void perturb(WaveField& phi, double amplitude, unsigned long long seed) {
  if (amplitude <= 0.0) return;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double scale = amplitude * std::sqrt(max_density(phi));
  for (double& x : phi.re) x += scale * u(rng);
  for (double& x : phi.im) x += scale * u(rng);
}

void deflate(WaveField& phi, const WaveField& against, const Grid& grid) {
  const double c = inner(phi.re, against.re, grid);
  for (std::size_t i = 0; i < phi.size(); ++i) phi.re[i] -= c * against.re[i];
}

SolveReport finish_report(SolveReport rep, const Discretization& disc, double beta,
                          SymmetryClass cls) {
  rep.beta = beta;
  rep.energy = energy(rep.field, disc.v, beta, disc.grid);
  rep.residual = eigen_residual(rep.field, disc.v, beta, disc.grid);
  rep.winding = winding_number(cls, rep.field, disc.grid);
  return rep;
}

// Normalized gradient flow constrained to `cls`, optionally orthogonal to
// `deflate_against`.
SolveReport gradient_flow(const Discretization& disc, double beta, const SolverConfig& cfg,
                          SymmetryClass cls, WaveField phi,
                          const WaveField* deflate_against = nullptr) {
  require(cfg.tau >= 0.0 && cfg.tau_min > 0.0, "time step must be positive");
  require(cfg.stop_tol > 0.0 && cfg.residual_tol > 0.0, "tolerances must be positive");
  require(cfg.max_iter > 0, "max_iter must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const Grid& grid = disc.grid;
  SolveReport rep;
  rep.mode = cfg.mode;
  rep.status = SolveStatus::NotConverged;

  const SymmetryProjector projector(cls, grid);
  projector.apply(phi);
  if (deflate_against) deflate(phi, *deflate_against, grid);
  phi = normalize(std::move(phi), grid);
  if (cfg.record_history) rep.energy_history.push_back(energy(phi, disc.v, beta, grid).energy);

  for (int it = 1; it <= cfg.max_iter; ++it) {
    const double tau =
        cfg.tau > 0.0 ? cfg.tau : std::max(cfg.tau_min, 0.1 / (1.0 + beta * max_density(phi)));
    StepResult step =
        befd_step(phi, disc.v_shifted, beta, tau, grid, cfg.linear_tol, cfg.linear_max_iter);
    rep.linear_iterations += step.linear_iterations;
    WaveField next = std::move(step.field);
    if (cls != SymmetryClass::None) {
      const double defect = projector.apply(next);
      rep.symmetry_defect = std::max(rep.symmetry_defect, defect);
      if (defect > cfg.symmetry_tol) {
        fail(ErrorCode::SymmetryViolated, "symmetry defect " + std::to_string(defect) +
                                              " at iteration " + std::to_string(it));
      }
    }
    if (deflate_against) deflate(next, *deflate_against, grid);
    if (cls != SymmetryClass::None || deflate_against) next = normalize(std::move(next), grid);

    const double change = max_difference(next, phi) / tau;
    phi = std::move(next);
    rep.iterations = it;
    rep.tau = tau;
    if (cfg.record_history) rep.energy_history.push_back(energy(phi, disc.v, beta, grid).energy);
    if (!std::isfinite(change)) fail(ErrorCode::NumericalFault, "gradient flow diverged");
    if (change < cfg.stop_tol &&
        eigen_residual(phi, disc.v, beta, grid) < cfg.residual_tol) {
      rep.status = SolveStatus::Converged;
      break;
    }
  }
  rep.field = std::move(phi);
  rep = finish_report(std::move(rep), disc, beta, cls);
  if (rep.status != SolveStatus::Converged) {
    rep.message = "no convergence after " + std::to_string(rep.iterations) +
                  " iterations (residual " + std::to_string(rep.residual) + ")";
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// Bordered system [T, -phi; (w phi)^T, 0] with T tridiagonal, solved by block
// elimination plus iterative refinement (T may be nearly singular on a branch).
class BorderedSolver {
 public:
  BorderedSolver(std::vector<double> dl, std::vector<double> d, std::vector<double> du,
                 const std::vector<double>& phi, std::span<const double> w)
      : n_(static_cast<int>(d.size())), dl_(dl), d_(d), du_(du), fl_(std::move(dl)),
        fd_(std::move(d)), fu_(std::move(du)), du2_(n_), ipiv_(n_), phi_(phi), w_(w) {
    int info = 0;
    dgttrf_(&n_, fl_.data(), fd_.data(), fu_.data(), du2_.data(), ipiv_.data(), &info);
    ok_ = info == 0;
    if (!ok_) return;
    b_ = phi_;
    solve_t(b_);
    wb_ = 0.0;
    for (int i = 0; i < n_; ++i) wb_ += w_[i] * phi_[i] * b_[i];
    ok_ = std::isfinite(wb_) && wb_ != 0.0;
  }

  bool ok() const { return ok_; }

  // Overwrites r1 with the field part; returns the scalar part.
  double solve(std::vector<double>& r1, double r2) const {
    const std::vector<double> f = r1;
    double nu = eliminate(r1, r2);
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<double> res(n_);
      double res2 = r2;
      for (int i = 0; i < n_; ++i) {
        double t = d_[i] * r1[i];
        if (i > 0) t += dl_[i - 1] * r1[i - 1];
        if (i + 1 < n_) t += du_[i] * r1[i + 1];
        res[i] = f[i] - (t - phi_[i] * nu);
        res2 -= w_[i] * phi_[i] * r1[i];
      }
      const double dnu = eliminate(res, res2);
      for (int i = 0; i < n_; ++i) r1[i] += res[i];
      nu += dnu;
    }
    return nu;
  }

 private:
  void solve_t(std::vector<double>& x) const {
    const char trans = 'N';
    const int nrhs = 1;
    int info = 0;
    dgttrs_(&trans, &n_, &nrhs, fl_.data(), fd_.data(), fu_.data(), du2_.data(), ipiv_.data(),
            x.data(), &n_, &info, 1);
  }

  double eliminate(std::vector<double>& r1, double r2) const {
    solve_t(r1);
    double wa = 0.0;
    for (int i = 0; i < n_; ++i) wa += w_[i] * phi_[i] * r1[i];
    const double nu = (r2 - wa) / wb_;
    for (int i = 0; i < n_; ++i) r1[i] += nu * b_[i];
    return nu;
  }

  int n_;
  std::vector<double> dl_, d_, du_;
  std::vector<double> fl_, fd_, fu_, du2_;
  std::vector<int> ipiv_;
  const std::vector<double>& phi_;
  std::span<const double> w_;
  std::vector<double> b_;
  double wb_ = 0.0;
  bool ok_ = false;
};

// Newton for (phi, mu) at fixed beta, 1D only.
// F = H phi + beta phi^3 - mu phi, G = (1 - ||phi||^2)/2.
bool newton_1d(const Discretization& disc, double beta, std::vector<double>& phi, double& mu,
               double tol, int max_iter, int& used) {
  const Grid& grid = disc.grid;
  const int n = grid.count(0);
  const double h = grid.spacing(0);
  const double off = -0.5 / (h * h);
  const auto w = grid.weights();
  std::vector<double> hphi(n), rhs(n);
  for (used = 0; used < max_iter; ++used) {
    grid.apply_laplacian(phi, hphi);
    double fnorm = 0.0;
    double knorm = 0.0;
    double g = 1.0;
    for (int i = 0; i < n; ++i) {
      const double p = phi[i];
      const double fi = -0.5 * hphi[i] + (disc.v[i] + beta * p * p - mu) * p;
      rhs[i] = -fi;
      fnorm += w[i] * fi * fi;
      knorm += w[i] * 0.25 * hphi[i] * hphi[i];
      g -= w[i] * p * p;
    }
    g *= 0.5;
    fnorm = std::sqrt(fnorm);
    const double scale = std::max({1.0, std::abs(mu), std::sqrt(knorm)});
    if (!std::isfinite(fnorm)) return false;
    if (fnorm < tol * scale && std::abs(g) < 1e-14) return true;

    std::vector<double> d(n), dl(n - 1, off), du(n - 1, off);
    for (int i = 0; i < n; ++i) d[i] = -2.0 * off + disc.v[i] + 3.0 * beta * phi[i] * phi[i] - mu;
    if (grid.boundary() == Boundary::Neumann) {
      du[0] = 2.0 * off;
      dl[n - 2] = 2.0 * off;
    }
    const BorderedSolver solver(std::move(dl), std::move(d), std::move(du), phi, w);
    if (!solver.ok()) return false;
    const double dmu = solver.solve(rhs, g);
    double change = 0.0;
    double peak = 0.0;
    for (int i = 0; i < n; ++i) {
      phi[i] += rhs[i];
      change = std::max(change, std::abs(rhs[i]));
      peak = std::max(peak, std::abs(phi[i]));
    }
    mu += dmu;
    // Round-off floor: the update no longer moves the iterate.
    if (change <= 1e-13 * peak && std::abs(dmu) <= 1e-13 * scale && fnorm < 1e3 * tol * scale) {
      ++used;
      return true;
    }
  }
  return false;
}

int sign_changes(const std::vector<double>& phi) {
  double peak = 0.0;
  for (double p : phi) peak = std::max(peak, std::abs(p));
  const double floor = 1e-8 * peak;
  int changes = 0;
  int last = 0;
  for (double p : phi) {
    if (std::abs(p) <= floor) continue;
    const int s = p > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

double relative_change(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(a[i]));
  }
  return den > 0.0 ? num / den : 0.0;
}

SolveReport solve_branch_1d(const Discretization& disc, double beta, const SolverConfig& cfg,
                            const WaveField* warm_start, double warm_beta) {
  const Grid& grid = disc.grid;
  require(grid.dim() == 1, "branch continuation is one-dimensional");
  require(disc.spec.bc != Boundary::Periodic, "branch continuation needs a non-periodic grid");
  const auto t0 = std::chrono::steady_clock::now();
  constexpr double kNewtonTol = 1e-11;
  constexpr int kNewtonIter = 40;

  std::vector<double> phi;
  double b0 = 0.0;
  long long newton_total = 0;
  int flow_iterations = 0;
  long long flow_linear = 0;
  if (warm_start && warm_start->real_valued() && warm_beta <= beta) {
    phi = normalize(*warm_start, grid).re;
    b0 = warm_beta;
  } else {
    SolverConfig gcfg = cfg;
    gcfg.mode = ExcitedMode::None;
    gcfg.record_history = false;
    const SolveReport ground = gradient_flow(disc, 0.0, gcfg, SymmetryClass::None,
                                             initial_guess(disc, ExcitedMode::None));
    if (!ground.converged()) {
      SolveReport rep = ground;
      rep.mode = ExcitedMode::Branch1D;
      rep.status = SolveStatus::NotConverged;
      rep.message = "linear ground state for deflation did not converge";
      return rep;
    }
    const SolveReport second =
        gradient_flow(disc, 0.0, gcfg, SymmetryClass::None,
                      initial_guess(disc, ExcitedMode::Branch1D), &ground.field);
    flow_iterations = ground.iterations + second.iterations;
    flow_linear = ground.linear_iterations + second.linear_iterations;
    if (!second.converged()) {
      SolveReport rep = second;
      rep.mode = ExcitedMode::Branch1D;
      rep.message = "second linear eigenstate did not converge";
      return rep;
    }
    phi = second.field.re;
  }
  double mu = energy(WaveField::real(phi), disc.v, b0, grid).chemical_potential;

  SolveReport rep;
  rep.mode = ExcitedMode::Branch1D;
  rep.status = SolveStatus::Converged;
  double current = b0;
  double step = beta - b0;
  if (b0 == 0.0 && beta > 1.0) step = 1.0;
  int used = 0;
  bool ok = newton_1d(disc, current, phi, mu, kNewtonTol, kNewtonIter, used);
  newton_total += used;
  if (!ok) {
    rep.status = SolveStatus::NotConverged;
    rep.message = "Newton failed at the starting point beta = " + std::to_string(current);
  }
  while (ok && current < beta) {
    step = std::min(step, std::max(1.0, current));
    const double target = std::min(beta, current + step);
    std::vector<double> trial = phi;
    double trial_mu = mu;
    const bool solved = newton_1d(disc, target, trial, trial_mu, kNewtonTol, kNewtonIter, used);
    if (solved && sign_changes(trial) == 1 && relative_change(phi, trial) < 0.25) {
      newton_total += used;
      phi = std::move(trial);
      mu = trial_mu;
      current = target;
      if (cfg.record_history) {
        rep.energy_history.push_back(energy(WaveField::real(phi), disc.v, current, grid).energy);
      }
      step *= 2.0;
    } else {
      newton_total += used;
      step *= 0.5;
      if (step < 1e-8 * std::max(1.0, beta)) {
        rep.status = SolveStatus::NotConverged;
        rep.message = "continuation stalled at beta = " + std::to_string(current);
        break;
      }
    }
  }
  rep.iterations = flow_iterations + static_cast<int>(newton_total);
  rep.linear_iterations = flow_linear + newton_total;
  rep.field = WaveField::real(std::move(phi));
  rep = finish_report(std::move(rep), disc, current, SymmetryClass::None);
  rep.beta = beta;
  if (rep.converged() && !(rep.residual < cfg.residual_tol)) {
    rep.status = SolveStatus::NotConverged;
    rep.message = "residual " + std::to_string(rep.residual) + " above tolerance";
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

SolveReport solve_excited_impl(const Discretization& disc, double beta, const SolverConfig& cfg,
                               const WaveField* warm_start, double warm_beta) {
  require(cfg.mode != ExcitedMode::None, "excited solve needs an excited mode");
  if (cfg.mode == ExcitedMode::Branch1D) {
    return solve_branch_1d(disc, beta, cfg, warm_start, warm_beta);
  }
  const Grid& grid = disc.grid;
  const SymmetryClass cls = symmetry_class(cfg.mode, grid);
  check_symmetry_support(cls, grid);
  if (cls == SymmetryClass::OddInX1) {
    const auto& L = grid.domain().lengths;
    for (int a = 1; a < grid.dim(); ++a) {
      require(L[0] >= L[a], "odd-in-x1 states need x1 to be the longest axis");
    }
  }
  if (potential_asymmetry(cls, disc.v, grid) > 1e-12) {
    fail(ErrorCode::InvalidArgument,
         "the potential lacks the symmetry of the requested excited state; use mode 'branch' "
         "for one-dimensional problems");
  }
  WaveField phi = warm_start ? *warm_start : initial_guess(disc, cfg.mode);
  if (!warm_start) perturb(phi, cfg.perturbation, cfg.seed);
  return gradient_flow(disc, beta, cfg, cls, std::move(phi));
}

}  // namespace

Discretization::Discretization(const ProblemSpec& s)
    : spec(s), grid(s.domain, s.n, s.bc), v(eval_potential(s.potential, grid)) {
  require(std::isfinite(s.beta) && s.beta >= 0.0, "beta must be finite and nonnegative");
  const double vmin = *std::min_element(v.begin(), v.end());
  v_shift = vmin < 0.0 ? -vmin : 0.0;
  v_shifted = v;
  for (double& x : v_shifted) x += v_shift;
}

BoxDomain whole_space_domain(const std::vector<double>& gamma, double beta_max) {
  const double mu_tf = asym::harmonic_tf_chemical_potential(gamma, beta_max);
  std::vector<double> half(gamma.size());
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    half[j] = std::max(8.0 / std::sqrt(gamma[j]), 1.5 * std::sqrt(2.0 * mu_tf) / gamma[j]);
  }
  return BoxDomain::centered(half);
}

bool is_degenerate(const ProblemSpec& spec) {
  if (spec.degenerate) return *spec.degenerate;
  const int d = spec.domain.dim;
  if (d < 2) return false;
  if (auto gamma = trap_frequencies(spec.potential, d)) {
    std::vector<double> g = *gamma;
    std::sort(g.begin(), g.end());
    return nearly_equal(g[0], g[1], spec.degeneracy_tol);
  }
  if (!std::holds_alternative<potential::Zero>(spec.potential)) return false;
  std::vector<double> L(spec.domain.lengths.begin(), spec.domain.lengths.begin() + d);
  std::sort(L.begin(), L.end(), std::greater<>());
  return nearly_equal(L[0], L[1], spec.degeneracy_tol);
}

std::string_view to_string(ExcitedMode mode) {
  switch (mode) {
    case ExcitedMode::None: return "none";
    case ExcitedMode::OddInX1: return "odd";
    case ExcitedMode::Vortex: return "vortex";
    case ExcitedMode::Branch1D: return "branch";
  }
  return "unknown";
}

ExcitedMode parse_excited_mode(std::string_view name) {
  if (name == "none" || name == "ground") return ExcitedMode::None;
  if (name == "odd" || name == "odd-x1") return ExcitedMode::OddInX1;
  if (name == "vortex") return ExcitedMode::Vortex;
  if (name == "branch") return ExcitedMode::Branch1D;
  fail(ErrorCode::InvalidArgument, "unknown excited mode '" + std::string(name) + "'");
}

ExcitedMode default_excited_mode(const Discretization& disc) {
  const Grid& grid = disc.grid;
  if (grid.boundary() == Boundary::Periodic) return ExcitedMode::Vortex;
  if (grid.dim() >= 2 && is_degenerate(disc.spec)) return ExcitedMode::Vortex;
  if (potential_asymmetry(SymmetryClass::OddInX1, disc.v, grid) <= 1e-12) {
    return ExcitedMode::OddInX1;
  }
  if (grid.dim() == 1) return ExcitedMode::Branch1D;
  fail(ErrorCode::InvalidArgument,
       "no first excited state is defined for a potential without x1 mirror symmetry in d > 1");
}

SymmetryClass symmetry_class(ExcitedMode mode, const Grid& grid) {
  switch (mode) {
    case ExcitedMode::None:
    case ExcitedMode::Branch1D: return SymmetryClass::None;
    case ExcitedMode::OddInX1: return SymmetryClass::OddInX1;
    case ExcitedMode::Vortex:
      return grid.boundary() == Boundary::Periodic ? SymmetryClass::RingShift
                                                   : SymmetryClass::Rotation;
  }
  return SymmetryClass::None;
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::NotConverged: return "not-converged";
    case SolveStatus::Failed: return "failed";
  }
  return "unknown";
}

StepResult befd_step(const WaveField& phi, std::span<const double> v, double beta, double tau,
                     const Grid& grid, double linear_tol, int linear_max_iter) {
  require(tau > 0.0, "time step must be positive");
  const std::size_t n = phi.size();
  const double sigma = 1.0 / tau;
  std::vector<double> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = phi.re[i] * phi.re[i];
    if (!phi.real_valued()) r += phi.im[i] * phi.im[i];
    q[i] = v[i] + beta * r;
  }
  // The system (sigma + A) phi* = sigma phi is solved for the correction
  // delta = phi* - c phi, c = sigma / (sigma + <phi, A phi>), whose right-hand
  // side is the (small) eigen-residual of phi.
  const linear::ShiftedHamiltonian a_op(grid, 0.0, q);
  const linear::ShiftedHamiltonian op(grid, sigma, q);
  const int parts = phi.real_valued() ? 1 : 2;
  std::array<std::vector<double>, 2> aphi;
  double rayleigh = 0.0;
  for (int p = 0; p < parts; ++p) {
    const auto& f = p == 0 ? phi.re : phi.im;
    aphi[p].resize(n);
    a_op.apply(f, aphi[p]);
    rayleigh += inner(f, aphi[p], grid);
  }
  rayleigh /= std::pow(norm(phi, grid), 2);
  const double c = sigma / (sigma + rayleigh);

  StepResult out;
  out.field = phi;
  for (int p = 0; p < parts; ++p) {
    const auto& f = p == 0 ? phi.re : phi.im;
    std::vector<double> rhs(n), delta(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -c * (aphi[p][i] - rayleigh * f[i]);
    const auto res = linear::solve(op, rhs, delta, linear_tol, linear_max_iter);
    if (!res.converged) {
      fail(ErrorCode::LinearSolveFailed,
           "linear solve stopped at relative residual " + std::to_string(res.relative_residual) +
               " after " + std::to_string(res.iterations) + " iterations");
    }
    out.linear_iterations += res.iterations;
    auto& dst = p == 0 ? out.field.re : out.field.im;
    for (std::size_t i = 0; i < n; ++i) dst[i] = c * f[i] + delta[i];
  }
  out.field = normalize(std::move(out.field), grid);
  return out;
}

WaveField initial_guess(const Discretization& disc, ExcitedMode mode) {
  const Grid& grid = disc.grid;
  const int d = grid.dim();
  const auto gamma = trap_frequencies(disc.spec.potential, d);
  const SymmetryClass cls = symmetry_class(mode, grid);
  WaveField phi;
  phi.re.assign(grid.size(), 0.0);
  if (cls == SymmetryClass::Rotation || cls == SymmetryClass::RingShift) {
    phi.im.assign(grid.size(), 0.0);
  }
  const auto& dom = grid.domain();
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const auto ijk = grid.unravel(idx);
    std::array<double, kMaxDim> x{};
    for (int a = 0; a < d; ++a) x[a] = grid.coordinate(a, ijk[a]);
    double env = 1.0;
    const int first = (mode == ExcitedMode::OddInX1 || mode == ExcitedMode::Branch1D ||
                       cls == SymmetryClass::RingShift)
                          ? 1
                          : 0;
    for (int a = first; a < d; ++a) env *= ground_factor(disc, a, x[a], gamma);
    switch (cls) {
      case SymmetryClass::None:
        if (mode == ExcitedMode::Branch1D) {
          phi.re[idx] = env * odd_factor(disc, x[0], gamma);
        } else {
          phi.re[idx] = env;
        }
        break;
      case SymmetryClass::OddInX1: phi.re[idx] = env * odd_factor(disc, x[0], gamma); break;
      case SymmetryClass::Rotation:
        phi.re[idx] = env * (x[0] - dom.center(0));
        phi.im[idx] = env * (x[1] - dom.center(1));
        break;
      case SymmetryClass::RingShift: {
        const double t = 2.0 * kPi * (x[0] - dom.origin[0]) / dom.lengths[0];
        phi.re[idx] = env * std::cos(t);
        phi.im[idx] = env * std::sin(t);
        break;
      }
    }
  }
  return normalize(std::move(phi), grid);
}

SolveReport solve_ground(const Discretization& disc, double beta, const SolverConfig& cfg,
                         const WaveField* warm_start) {
  require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and nonnegative");
  WaveField phi;
  if (warm_start) {
    phi = *warm_start;
  } else {
    phi = initial_guess(disc, ExcitedMode::None);
    perturb(phi, cfg.perturbation, cfg.seed);
  }
  SolverConfig gcfg = cfg;
  gcfg.mode = ExcitedMode::None;
  SolveReport rep = gradient_flow(disc, beta, gcfg, SymmetryClass::None, std::move(phi));
  double sum = 0.0;
  for (double x : rep.field.re) sum += x;
  if (sum < 0.0) {
    for (double& x : rep.field.re) x = -x;
    for (double& x : rep.field.im) x = -x;
  }
  return rep;
}

SolveReport solve_excited(const Discretization& disc, double beta, const SolverConfig& cfg,
                          const WaveField* warm_start) {
  require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and nonnegative");
  return solve_excited_impl(disc, beta, cfg, warm_start, 0.0);
}

SolveReport solve(const Discretization& disc, double beta, const SolverConfig& cfg,
                  const WaveField* warm_start) {
  if (cfg.mode == ExcitedMode::None) return solve_ground(disc, beta, cfg, warm_start);
  return solve_excited(disc, beta, cfg, warm_start);
}

SolveReport solve_ground(const ProblemSpec& spec, const SolverConfig& cfg) {
  const Discretization disc(spec);
  return solve_ground(disc, spec.beta, cfg);
}

SolveReport solve_excited(const ProblemSpec& spec, const SolverConfig& cfg) {
  const Discretization disc(spec);
  return solve_excited(disc, spec.beta, cfg);
}

std::vector<SolveReport> continue_in_beta(const Discretization& disc,
                                          const std::vector<double>& betas,
                                          const SolverConfig& cfg) {
  for (std::size_t k = 1; k < betas.size(); ++k) {
    require(betas[k] > betas[k - 1], "beta list must be strictly ascending");
  }
  std::vector<SolveReport> out;
  out.reserve(betas.size());
  const WaveField* warm = nullptr;
  double warm_beta = 0.0;
  for (double beta : betas) {
    SolveReport rep;
    try {
      if (cfg.mode == ExcitedMode::None) {
        rep = solve_ground(disc, beta, cfg, warm);
      } else {
        require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and nonnegative");
        rep = solve_excited_impl(disc, beta, cfg, warm, warm_beta);
      }
    } catch (const Error& e) {
      rep = SolveReport{};
      rep.beta = beta;
      rep.mode = cfg.mode;
      rep.status = SolveStatus::Failed;
      rep.message = e.what();
    }
    out.push_back(std::move(rep));
    if (out.back().converged()) {
      warm = &out.back().field;
      warm_beta = beta;
    }
  }
  return out;
}

}  // namespace gpegap
