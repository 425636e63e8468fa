#include "gpegap/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "gpegap/error.hpp"

namespace gpegap::asym {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> sorted_lengths(std::span<const double> lengths) {
  require(!lengths.empty() && lengths.size() <= 3, "dimension must be 1, 2 or 3");
  std::vector<double> L(lengths.begin(), lengths.end());
  for (double x : L) require(std::isfinite(x) && x > 0.0, "lengths must be positive");
  std::sort(L.begin(), L.end(), std::greater<>());
  return L;
}

std::vector<double> sorted_gamma(std::span<const double> gamma) {
  require(!gamma.empty() && gamma.size() <= 3, "dimension must be 1, 2 or 3");
  std::vector<double> g(gamma.begin(), gamma.end());
  for (double x : g) require(std::isfinite(x) && x > 0.0, "trap frequencies must be positive");
  std::sort(g.begin(), g.end());
  return g;
}

void check_beta(double beta) {
  require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and nonnegative");
}

void finish(Values& v) {
  if (std::isnan(v.delta_E) && !std::isnan(v.E_1) && !std::isnan(v.E_g)) v.delta_E = v.E_1 - v.E_g;
  if (std::isnan(v.delta_mu) && !std::isnan(v.mu_1) && !std::isnan(v.mu_g)) {
    v.delta_mu = v.mu_1 - v.mu_g;
  }
}

void mark_weak(Values& v, double beta, const RegimeGuard& guard) {
  if (beta > guard.weak_max) {
    v.extrapolated = true;
    v.note = "weak-interaction formula evaluated outside beta <= " + std::to_string(guard.weak_max);
  }
}

void mark_strong(Values& v, double beta, const RegimeGuard& guard) {
  if (beta < guard.strong_min) {
    v.extrapolated = true;
    v.note =
        "strong-interaction formula evaluated outside beta >= " + std::to_string(guard.strong_min);
  }
}

double sqr(double x) { return x * x; }

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::WeakLinear: return "weak O(beta)";
    case Regime::WeakQuadratic: return "weak O(beta^2)";
    case Regime::Strong: return "strong o(1)";
    case Regime::StrongLogarithmic: return "strong logarithmic";
    case Regime::Exact: return "exact";
  }
  return "unknown";
}

BoxConstants box_constants(std::span<const double> lengths) {
  const auto L = sorted_lengths(lengths);
  const int d = static_cast<int>(L.size());
  BoxConstants c;
  c.dim = d;
  double prod = 1.0;
  double inv_sum = 0.0;
  double inv_sq_sum = 0.0;
  for (int j = 0; j < d; ++j) {
    c.lengths[j] = L[j];
    prod *= L[j];
    inv_sum += 1.0 / L[j];
    inv_sq_sum += 1.0 / (L[j] * L[j]);
  }
  c.A0 = 1.0 / std::sqrt(prod);
  c.A1 = 2.0 / L[0] * (25.0 / (9.0 * L[0]) + 2.0 / 9.0 * inv_sum);
  c.A2 = 0.5 * kPi * kPi * inv_sq_sum;
  c.A3 = inv_sum;
  c.A4 = 0.0;
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) c.A4 += 4.0 / (L[j] * L[k]);
  }
  c.A5 = c.A4;
  for (int j = 1; j < d; ++j) c.A5 += 4.0 / (L[0] * L[j]);
  c.A6 = inv_sq_sum;
  const double pi2 = kPi * kPi;
  if (d == 1) {
    c.G1 = 3.0 / (64.0 * pi2);
    c.G2 = 9.0 / (64.0 * pi2);
  } else if (d == 2) {
    const double bracket = 27.0 / 4.0 * L[0] * L[0] + 3.0 / (c.A6 * (c.A6 * L[0] * L[0] + 3.0));
    c.G1 = std::pow(c.A0, 4) / (64.0 * pi2) * bracket;
    c.G2 = 3.0 * c.G1;
  } else {
    const double diff = box_c(L, {1, 1, 1}) - box_c(L, {2, 1, 1});
    c.G1 = diff / (256.0 * pi2);
    c.G2 = 3.0 * diff / (256.0 * pi2);
  }
  return c;
}

double box_c(std::span<const double> lengths, std::array<int, 3> k) {
  require(lengths.size() == 3, "C_{k1,k2,k3} is defined for d = 3");
  const auto L = sorted_lengths(lengths);
  const double A0 = 1.0 / std::sqrt(L[0] * L[1] * L[2]);
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
  std::array<double, 3> q{};
  for (int j = 0; j < 3; ++j) {
    s1 += L[j] * L[j] / (k[j] * k[j]);
    q[j] = (k[j] * k[j]) / (L[j] * L[j]);
    s3 += q[j];
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) s2 += 1.0 / (q[i] + q[j]);
  }
  return std::pow(A0, 4) * (81.0 * s1 + 9.0 * s2 + 1.0 / s3);
}

HarmonicConstants harmonic_constants(std::span<const double> gamma) {
  const auto g = sorted_gamma(gamma);
  HarmonicConstants c;
  c.dim = static_cast<int>(g.size());
  c.B0 = 1.0;
  c.B1 = 0.0;
  c.B2 = 1.0;
  for (int j = 0; j < c.dim; ++j) {
    c.gamma[j] = g[j];
    c.B0 *= std::sqrt(g[j] / (2.0 * kPi));
    c.B1 += 0.5 * g[j];
    c.B2 *= g[j];
  }
  c.Cd = c.dim == 1 ? 2.0 : (c.dim == 2 ? kPi : 4.0 * kPi / 3.0);
  return c;
}

bool box_degenerate(std::span<const double> lengths, double rel_tol) {
  const auto L = sorted_lengths(lengths);
  return L.size() >= 2 && nearly_equal(L[0], L[1], rel_tol);
}

bool harmonic_degenerate(std::span<const double> gamma, double rel_tol) {
  const auto g = sorted_gamma(gamma);
  return g.size() >= 2 && nearly_equal(g[0], g[1], rel_tol);
}

Values box_weak(std::span<const double> lengths, double beta, bool degenerate,
                RegimeGuard guard) {
  check_beta(beta);
  const auto c = box_constants(lengths);
  const int d = c.dim;
  if (degenerate) {
    require(d >= 2 && nearly_equal(c.lengths[0], c.lengths[1], 1e-12),
            "degenerate box formulas need L_1 = L_2 and d >= 2");
  }
  const double a02 = c.A0 * c.A0;
  const double three_d = std::pow(3.0, d);
  const double two_d = std::pow(2.0, d);
  const double excite = 1.5 * kPi * kPi / sqr(c.lengths[0]);
  Values v;
  v.regime = Regime::WeakLinear;
  v.E_g = c.A2 + three_d * a02 / (2.0 * two_d) * beta;
  v.mu_g = c.A2 + three_d * a02 / two_d * beta;
  if (degenerate) {
    v.E_1 = excite + c.A2 + 13.0 * d / 32.0 * a02 * beta;
    v.mu_1 = excite + c.A2 + 13.0 * d / 16.0 * a02 * beta;
  } else {
    v.E_1 = excite + c.A2 + three_d * a02 / (2.0 * two_d) * beta;
    v.mu_1 = excite + c.A2 + three_d * a02 / two_d * beta;
  }
  mark_weak(v, beta, guard);
  finish(v);
  return v;
}

Values box_gap_weak_secondorder(std::span<const double> lengths, double beta,
                                RegimeGuard guard) {
  check_beta(beta);
  require(!box_degenerate(lengths), "second-order weak gap needs a nondegenerate box");
  const auto c = box_constants(lengths);
  Values v;
  v.regime = Regime::WeakQuadratic;
  const double base = 1.5 * kPi * kPi / sqr(c.lengths[0]);
  v.delta_E = base + c.G1 * beta * beta;
  v.delta_mu = base + c.G2 * beta * beta;
  mark_weak(v, beta, guard);
  return v;
}

Values box_strong(std::span<const double> lengths, double beta, RegimeGuard guard) {
  check_beta(beta);
  const auto c = box_constants(lengths);
  const double L1 = c.lengths[0];
  const double sb = std::sqrt(beta);
  const double a02 = c.A0 * c.A0;
  const double t = c.A3 * L1 + 1.0;
  Values v;
  v.regime = Regime::Strong;
  v.E_g = 0.5 * a02 * beta + 4.0 * c.A0 * c.A3 / 3.0 * sb + 2.0 * c.A3 * c.A3 - 8.0 * c.A4 / 9.0;
  v.mu_g = a02 * beta + 2.0 * c.A0 * c.A3 * sb + 2.0 * c.A3 * c.A3 - c.A4;
  v.E_1 = 0.5 * a02 * beta + 4.0 * c.A0 * t / (3.0 * L1) * sb + 2.0 * t * t / (L1 * L1) -
          8.0 * c.A5 / 9.0;
  v.mu_1 = a02 * beta + 2.0 * c.A0 * t / L1 * sb + 2.0 * t * t / (L1 * L1) - c.A5;
  mark_strong(v, beta, guard);
  finish(v);
  return v;
}

Values box_degenerate_strong_2d(std::span<const double> lengths, double beta,
                                RegimeGuard guard) {
  check_beta(beta);
  require(lengths.size() == 2 && box_degenerate(lengths),
          "degenerate strong box formulas need d = 2 and L_1 = L_2");
  require(beta > 0.0, "logarithmic regime needs beta > 0");
  const double L = lengths[0];
  const double L2 = L * L;
  const double lb = std::log(beta);
  Values v = box_strong(lengths, beta, guard);
  v.regime = Regime::StrongLogarithmic;
  v.E_1 = beta / (2.0 * L2) + 8.0 * std::sqrt(beta) / (3.0 * L2) + kPi / (2.0 * L2) * lb;
  v.mu_1 = beta / L2 + 4.0 * std::sqrt(beta) / L2 + kPi / (2.0 * L2) * lb;
  v.delta_E = kPi / (2.0 * L2) * lb;
  v.delta_mu = kPi / (2.0 * L2) * lb;
  if (v.note.empty()) v.note = "gaps carry the leading ln(beta) term only; O(1) unknown";
  return v;
}

double harmonic_tf_chemical_potential(std::span<const double> gamma, double beta) {
  check_beta(beta);
  const auto c = harmonic_constants(gamma);
  const double d = c.dim;
  return 0.5 * std::pow((d + 2.0) * c.B2 * beta / c.Cd, 2.0 / (d + 2.0));
}

Values harmonic_weak(std::span<const double> gamma, double beta, bool degenerate,
                     RegimeGuard guard) {
  check_beta(beta);
  const auto c = harmonic_constants(gamma);
  if (degenerate) {
    require(c.dim >= 2 && nearly_equal(c.gamma[0], c.gamma[1], 1e-12),
            "degenerate harmonic formulas need gamma_1 = gamma_2 and d >= 2");
  }
  const double g1 = c.gamma[0];
  Values v;
  v.regime = Regime::WeakLinear;
  v.E_g = c.B1 + 0.5 * c.B0 * beta;
  v.mu_g = c.B1 + c.B0 * beta;
  if (degenerate) {
    // Linear limit gamma_1 + B_1, the second harmonic eigenvalue.
    v.E_1 = g1 + c.B1 + c.B0 * c.dim / 8.0 * beta;
    v.mu_1 = g1 + c.B1 + c.B0 * c.dim / 4.0 * beta;
  } else {
    v.E_1 = g1 + c.B1 + 3.0 * c.B0 / 8.0 * beta;
    v.mu_1 = g1 + c.B1 + 3.0 * c.B0 / 4.0 * beta;
  }
  mark_weak(v, beta, guard);
  finish(v);
  return v;
}

Values harmonic_strong(std::span<const double> gamma, double beta, bool higher_order,
                       RegimeGuard guard) {
  check_beta(beta);
  const auto c = harmonic_constants(gamma);
  const double d = c.dim;
  const double g1 = c.gamma[0];
  const double mu_tf = harmonic_tf_chemical_potential(gamma, beta);
  const double shift = std::numbers::sqrt2 / 2.0 * g1;
  Values v;
  v.regime = Regime::Strong;
  v.mu_g = mu_tf;
  v.E_g = (2.0 + d) / (4.0 + d) * mu_tf;
  v.mu_1 = mu_tf + shift;
  v.E_1 = v.E_g + shift;
  v.delta_E = shift;
  v.delta_mu = shift;
  if (higher_order) {
    require(beta > 0.0, "higher-order correction needs beta > 0");
    const double scale = std::pow(c.Cd / (c.B2 * beta), 2.0 / (d + 2.0));
    v.delta_E += g1 * g1 * std::pow(d + 2.0, d / (d + 2.0)) / 4.0 * scale;
    v.delta_mu += g1 * g1 * d * std::pow(d + 2.0, -2.0 / (d + 2.0)) / 4.0 * scale;
  }
  mark_strong(v, beta, guard);
  return v;
}

Values harmonic_degenerate_strong_2d(std::span<const double> gamma, double beta,
                                     RegimeGuard guard) {
  check_beta(beta);
  require(gamma.size() == 2 && harmonic_degenerate(gamma),
          "degenerate strong harmonic formulas need d = 2 and gamma_1 = gamma_2");
  require(beta > 0.0, "logarithmic regime needs beta > 0");
  const double g = gamma[0];
  const double mu_tf = harmonic_tf_chemical_potential(gamma, beta);
  const double core = std::sqrt(kPi / beta) * std::log(beta);
  Values v;
  v.regime = Regime::StrongLogarithmic;
  v.mu_g = mu_tf;
  v.E_g = 2.0 / 3.0 * mu_tf;
  v.E_1 = v.E_g + 0.5 * g * core;
  v.mu_1 = v.mu_g + 0.25 * g * core;
  v.delta_E = 0.5 * g * core;
  v.delta_mu = 0.25 * g * core;
  mark_strong(v, beta, guard);
  return v;
}

Values periodic_exact(std::span<const double> lengths, double beta) {
  check_beta(beta);
  const auto c = box_constants(lengths);
  const double a02 = c.A0 * c.A0;
  const double excite = 2.0 * kPi * kPi / sqr(c.lengths[0]);
  Values v;
  v.regime = Regime::Exact;
  v.E_g = 0.5 * a02 * beta;
  v.mu_g = a02 * beta;
  v.E_1 = excite + 0.5 * a02 * beta;
  v.mu_1 = excite + a02 * beta;
  v.delta_E = excite;
  v.delta_mu = excite;
  return v;
}

Values neumann_asym(std::span<const double> lengths, double beta, bool degenerate,
                    NeumannRegime regime, RegimeGuard guard) {
  check_beta(beta);
  const auto c = box_constants(lengths);
  if (degenerate) {
    require(c.dim >= 2 && nearly_equal(c.lengths[0], c.lengths[1], 1e-12),
            "degenerate Neumann formulas need L_1 = L_2 and d >= 2");
  }
  const double L1 = c.lengths[0];
  const double a02 = c.A0 * c.A0;  // |Omega|^{-1}
  Values v;
  v.E_g = 0.5 * a02 * beta;
  v.mu_g = a02 * beta;
  if (regime == NeumannRegime::Weak) {
    v.regime = Regime::WeakLinear;
    const double base = 0.5 * kPi * kPi / (L1 * L1);
    if (degenerate) {
      v.E_1 = base + 5.0 * a02 / 8.0 * beta;
      v.mu_1 = base + 5.0 * a02 / 4.0 * beta;
    } else {
      v.E_1 = base + 0.75 * a02 * beta;
      v.mu_1 = base + 1.5 * a02 * beta;
    }
    mark_weak(v, beta, guard);
  } else if (degenerate) {
    require(c.dim == 2, "degenerate strong Neumann formulas are available for d = 2 only");
    require(beta > 0.0, "logarithmic regime needs beta > 0");
    v.regime = Regime::StrongLogarithmic;
    const double L2 = L1 * L1;
    v.E_1 = beta / (2.0 * L2) + kPi / (2.0 * L2) * std::log(beta);
    v.mu_1 = beta / L2 + kPi / (2.0 * L2) * std::log(beta);
    mark_strong(v, beta, guard);
  } else {
    v.regime = Regime::Strong;
    const double sb = std::sqrt(beta);
    v.E_1 = 0.5 * a02 * beta + 4.0 * c.A0 / (3.0 * L1) * sb + 2.0 / (L1 * L1);
    v.mu_1 = a02 * beta + 2.0 * c.A0 / L1 * sb + 2.0 / (L1 * L1);
    mark_strong(v, beta, guard);
  }
  finish(v);
  return v;
}

double box_boundary_layer(double x, double L, double mu) {
  const double s = std::sqrt(mu);
  return std::tanh(s * x) + std::tanh(s * (L - x)) - std::tanh(s * L);
}

double box_interface_layer(double x, double L, double mu) {
  const double s = std::sqrt(mu);
  return std::tanh(s * x) - std::tanh(s * (L - x)) + std::tanh(s * (0.5 * L - x));
}

double vortex_core(double r, double mu) {
  const double q = 2.0 * mu * r * r;
  return std::sqrt(q / (1.0 + q));
}

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::BoxGround: return "box-ground";
    case ProfileKind::BoxExcited: return "box-excited";
    case ProfileKind::BoxVortexDensity: return "box-vortex";
    case ProfileKind::HarmonicGroundTF: return "harmonic-ground-tf";
    case ProfileKind::HarmonicExcitedMatched: return "harmonic-excited";
    case ProfileKind::HarmonicVortexDensity: return "harmonic-vortex";
    case ProfileKind::NeumannExcited: return "neumann-excited";
  }
  return "unknown";
}

ProfileKind parse_profile_kind(std::string_view name) {
  for (auto k : {ProfileKind::BoxGround, ProfileKind::BoxExcited, ProfileKind::BoxVortexDensity,
                 ProfileKind::HarmonicGroundTF, ProfileKind::HarmonicExcitedMatched,
                 ProfileKind::HarmonicVortexDensity, ProfileKind::NeumannExcited}) {
    if (to_string(k) == name) return k;
  }
  fail(ErrorCode::InvalidArgument, "unknown profile kind '" + std::string(name) + "'");
}

Profile profile(ProfileKind kind, const ProfileParams& params, const Grid& grid) {
  require(params.mu > 0.0 && params.beta > 0.0, "profile needs mu > 0 and beta > 0");
  const int d = grid.dim();
  const auto& dom = grid.domain();
  const double mu = params.mu;
  const double beta = params.beta;
  const double amp = std::sqrt(mu / beta);
  const bool harmonic = kind == ProfileKind::HarmonicGroundTF ||
                        kind == ProfileKind::HarmonicExcitedMatched ||
                        kind == ProfileKind::HarmonicVortexDensity;
  if (harmonic) {
    require(static_cast<int>(params.gamma.size()) == d, "profile needs one gamma per dimension");
  }
  const bool vortex =
      kind == ProfileKind::BoxVortexDensity || kind == ProfileKind::HarmonicVortexDensity;
  if (vortex) require(d == 2, "vortex profiles are two-dimensional");

  Profile out;
  out.raw.re.assign(grid.size(), 0.0);
  if (vortex) out.raw.im.assign(grid.size(), 0.0);

  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const auto ijk = grid.unravel(idx);
    std::array<double, 3> x{0, 0, 0};  // box kinds: offset from origin; harmonic: absolute
    for (int a = 0; a < d; ++a) {
      x[a] = grid.coordinate(a, ijk[a]) - (harmonic ? 0.0 : dom.origin[a]);
    }
    double value = 0.0;
    switch (kind) {
      case ProfileKind::BoxGround: {
        value = amp;
        for (int a = 0; a < d; ++a) value *= box_boundary_layer(x[a], dom.lengths[a], mu);
        break;
      }
      case ProfileKind::BoxExcited: {
        value = amp * box_interface_layer(x[0], dom.lengths[0], mu);
        for (int a = 1; a < d; ++a) value *= box_boundary_layer(x[a], dom.lengths[a], mu);
        break;
      }
      case ProfileKind::NeumannExcited: {
        value = amp * std::tanh(std::sqrt(mu) * (0.5 * dom.lengths[0] - x[0]));
        break;
      }
      case ProfileKind::HarmonicGroundTF: {
        double v = 0.0;
        for (int a = 0; a < d; ++a) v += 0.5 * sqr(params.gamma[a] * x[a]);
        value = std::sqrt(std::max(mu - v, 0.0) / beta);
        break;
      }
      case ProfileKind::HarmonicExcitedMatched: {
        double v1 = 0.0;
        double v2 = 0.0;
        for (int a = 0; a < d; ++a) {
          const double t = 0.5 * sqr(params.gamma[a] * x[a]);
          v1 += t;
          if (a > 0) v2 += t;
        }
        const double g1 = mu - v1;
        const double g2 = mu - v2;
        if (g1 >= 0.0) {
          const double th = std::tanh(x[0] * std::sqrt(g2));
          if (x[0] >= 0.0) {
            value = std::sqrt(g1 / beta) + std::sqrt(g2 / beta) * (th - 1.0);
          } else {
            value = -std::sqrt(g1 / beta) + std::sqrt(g2 / beta) * (1.0 + th);
          }
        }
        break;
      }
      case ProfileKind::BoxVortexDensity:
      case ProfileKind::HarmonicVortexDensity: {
        double u, w;
        if (kind == ProfileKind::BoxVortexDensity) {
          u = x[0] - 0.5 * dom.lengths[0];
          w = x[1] - 0.5 * dom.lengths[1];
        } else {
          u = x[0];
          w = x[1];
        }
        const double r = std::hypot(u, w);
        double rho;
        if (kind == ProfileKind::BoxVortexDensity) {
          const double outer = box_boundary_layer(x[0], dom.lengths[0], mu) *
                               box_boundary_layer(x[1], dom.lengths[1], mu);
          rho = mu / beta * (sqr(vortex_core(r, mu)) + outer * outer - 1.0);
        } else {
          const double g = params.gamma[0];
          rho = sqr(vortex_core(r, mu)) * std::max(2.0 * mu - g * g * r * r, 0.0) / (2.0 * beta);
        }
        const double modulus = std::sqrt(std::max(rho, 0.0));
        const double th = std::atan2(w, u);
        out.raw.re[idx] = modulus * std::cos(th);
        out.raw.im[idx] = modulus * std::sin(th);
        continue;
      }
    }
    out.raw.re[idx] = value;
  }
  out.normalized = normalize(out.raw, grid);
  return out;
}

}  // namespace gpegap::asym
