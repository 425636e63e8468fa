#pragma once

#include <array>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gpegap/functional.hpp"
#include "gpegap/grid.hpp"

/// Closed-form weak/strong interaction expansions for the ground and first
/// excited states, and the approximate (Thomas-Fermi / matched) profiles.
///
/// Box lengths are taken in any order and sorted so that L_1 is the longest
/// side. Harmonic frequencies are sorted ascending, gamma_1 the weakest.
namespace gpegap::asym {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum class Regime { WeakLinear, WeakQuadratic, Strong, StrongLogarithmic, Exact };

std::string_view to_string(Regime regime);

/// beta ranges in which weak/strong formulas are evaluated without a flag.
struct RegimeGuard {
  double weak_max = 1.0;
  double strong_min = 1.0;
};

/// Unavailable entries are NaN. delta_* are the gap formulas, which may
/// carry only the leading term (StrongLogarithmic) and then differ from
/// E_1 - E_g.
struct Values {
  double E_g = kNaN;
  double mu_g = kNaN;
  double E_1 = kNaN;
  double mu_1 = kNaN;
  double delta_E = kNaN;
  double delta_mu = kNaN;
  Regime regime = Regime::Exact;
  bool extrapolated = false;
  std::string note;
};

struct BoxConstants {
  int dim = 1;
  std::array<double, 3> lengths{};  ///< sorted descending
  double A0 = 0, A1 = 0, A2 = 0, A3 = 0, A4 = 0, A5 = 0, A6 = 0;
  double G1 = kNaN;  ///< beta^2 coefficient of delta_E
  double G2 = kNaN;  ///< beta^2 coefficient of delta_mu
};

struct HarmonicConstants {
  int dim = 1;
  std::array<double, 3> gamma{};  ///< sorted ascending
  double B0 = 0, B1 = 0, B2 = 0, Cd = 0;
};

BoxConstants box_constants(std::span<const double> lengths);
/// C_{k1,k2,k3} for a 3D box.
double box_c(std::span<const double> lengths, std::array<int, 3> k);
HarmonicConstants harmonic_constants(std::span<const double> gamma);

/// True when L_1 == L_2 (d >= 2) to the relative tolerance.
bool box_degenerate(std::span<const double> lengths, double rel_tol = 1e-12);
bool harmonic_degenerate(std::span<const double> gamma, double rel_tol = 1e-12);

Values box_weak(std::span<const double> lengths, double beta, bool degenerate,
                RegimeGuard guard = {});
Values box_gap_weak_secondorder(std::span<const double> lengths, double beta,
                                RegimeGuard guard = {});
Values box_strong(std::span<const double> lengths, double beta, RegimeGuard guard = {});
Values box_degenerate_strong_2d(std::span<const double> lengths, double beta,
                                RegimeGuard guard = {});

/// mu_g^TF = 1/2 ((d+2) B_2 beta / C_d)^{2/(d+2)}.
double harmonic_tf_chemical_potential(std::span<const double> gamma, double beta);

Values harmonic_weak(std::span<const double> gamma, double beta, bool degenerate,
                     RegimeGuard guard = {});
/// Strong-regime state values; gaps carry the next-order correction when
/// higher_order is set, otherwise the leading sqrt(2)/2 gamma_1.
Values harmonic_strong(std::span<const double> gamma, double beta, bool higher_order,
                       RegimeGuard guard = {});
Values harmonic_degenerate_strong_2d(std::span<const double> gamma, double beta,
                                     RegimeGuard guard = {});

Values periodic_exact(std::span<const double> lengths, double beta);

enum class NeumannRegime { Weak, Strong };
Values neumann_asym(std::span<const double> lengths, double beta, bool degenerate,
                    NeumannRegime regime, RegimeGuard guard = {});

// Approximate profiles ------------------------------------------------------

/// tanh(sqrt(mu) x) + tanh(sqrt(mu)(L-x)) - tanh(sqrt(mu) L).
double box_boundary_layer(double x, double L, double mu);
/// tanh(sqrt(mu) x) - tanh(sqrt(mu)(L-x)) + tanh(sqrt(mu)(L/2 - x)).
double box_interface_layer(double x, double L, double mu);
/// f_a(r) = sqrt(2 mu r^2 / (1 + 2 mu r^2)).
double vortex_core(double r, double mu);

enum class ProfileKind {
  BoxGround,             ///< product of boundary layers
  BoxExcited,            ///< interface layer in x_1
  BoxVortexDensity,      ///< matched vortex density, square box, d = 2
  HarmonicGroundTF,      ///< sqrt((mu - V)_+ / beta)
  HarmonicExcitedMatched,
  HarmonicVortexDensity, ///< matched vortex density, isotropic trap, d = 2
  NeumannExcited,        ///< sqrt(mu/beta) tanh(sqrt(mu)(L_1/2 - x_1))
};

std::string_view to_string(ProfileKind kind);
ProfileKind parse_profile_kind(std::string_view name);

struct ProfileParams {
  double mu = 0.0;
  double beta = 0.0;
  /// Trap frequencies for the harmonic kinds (box kinds read the grid domain).
  std::vector<double> gamma;
};

struct Profile {
  WaveField raw;         ///< the closed form as printed, unnormalized
  WaveField normalized;  ///< raw / ||raw||
};

/// Vortex kinds return a complex field sqrt(rho) e^{i theta}.
Profile profile(ProfileKind kind, const ProfileParams& params, const Grid& grid);

}  // namespace gpegap::asym
