#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gpegap/grid.hpp"

namespace gpegap {

namespace potential {

/// V = 0 (box potential).
struct Zero {};

/// V = 1/2 sum_j gamma_j^2 x_j^2, with 0 < gamma_1 <= ... <= gamma_d.
struct Harmonic {
  std::vector<double> gamma;
};

/// V = 1/2 gamma^2 |x|^2 + v0 sum_j cos(k x_j).
struct HarmonicPlusCosine {
  double gamma = 1.0;
  double v0 = 0.0;
  double k = 1.0;
};

/// V = v0 |x - center|^2.
struct ShiftedQuadratic {
  double v0 = 1.0;
  std::vector<double> center;
};

/// V = coef * x_1^2 (coef < 0 gives the concave demo -10 x^2).
struct NegativeQuadratic {
  double coef = -10.0;
};

/// V = amplitude * sin(k (x_1 - shift)).
struct Sine {
  double amplitude = 10.0;
  double k = 10.0;
  double shift = 1.0;
};

/// Node values sampled in row-major grid order.
struct Tabulated {
  std::vector<double> values;
};

}  // namespace potential

using PotentialSpec =
    std::variant<potential::Zero, potential::Harmonic, potential::HarmonicPlusCosine,
                 potential::ShiftedQuadratic, potential::NegativeQuadratic, potential::Sine,
                 potential::Tabulated>;

/// Number of spatial dimensions the potential is tied to, if any.
std::optional<int> potential_dimension(const PotentialSpec& spec);

std::vector<double> eval_potential(const PotentialSpec& spec, const Grid& grid);

/// Reads whitespace-delimited node values, one per line.
potential::Tabulated load_tabulated(const std::string& path);

/// Closed-form convexity modulus gamma_v (D^2 V >= gamma_v^2 I) for the
/// analytic potentials; nullopt when V is not convex or unknown.
std::optional<double> convexity_modulus(const PotentialSpec& spec);
/// True/false for analytic potentials, nullopt for tabulated data.
std::optional<bool> is_convex(const PotentialSpec& spec);

/// Largest |V(x) - V(Mx)| relative to max|V| for the x_1 mirror M.
double mirror_asymmetry(const std::vector<double>& v, const Grid& grid);

std::string describe(const PotentialSpec& spec);

}  // namespace gpegap
