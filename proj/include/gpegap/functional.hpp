#pragma once

#include <span>
#include <vector>

#include "gpegap/grid.hpp"

namespace gpegap {

/// Grid function phi. The imaginary part is stored only for complex fields.
struct WaveField {
  std::vector<double> re;
  std::vector<double> im;

  static WaveField real(std::vector<double> values) { return {std::move(values), {}}; }
  static WaveField complex(std::vector<double> re, std::vector<double> im) {
    return {std::move(re), std::move(im)};
  }

  bool real_valued() const { return im.empty(); }
  std::size_t size() const { return re.size(); }
  void make_complex() {
    if (im.empty()) im.assign(re.size(), 0.0);
  }
};

/// Parts of E(phi) = int 1/2|grad phi|^2 + V|phi|^2 + beta/2 |phi|^4.
struct EnergyBreakdown {
  double kinetic = 0.0;      ///< <phi, -1/2 Delta_h phi>
  double potential = 0.0;    ///< int V|phi|^2
  double interaction = 0.0;  ///< int |phi|^4 (without the beta/2 factor)
  double energy = 0.0;
  double chemical_potential = 0.0;
};

std::vector<double> density(const WaveField& phi);
double norm(const WaveField& phi, const Grid& grid);
/// Throws InvalidArgument for a zero field.
WaveField normalize(WaveField phi, const Grid& grid);

EnergyBreakdown energy(const WaveField& phi, std::span<const double> v, double beta,
                       const Grid& grid);

/// (-1/2 Delta_h + V + beta|phi|^2) phi, not normalized.
WaveField apply_hamiltonian(const WaveField& phi, std::span<const double> v, double beta,
                            const Grid& grid);

/// || H phi - mu(phi) phi ||_2 with mu from the energy breakdown.
double eigen_residual(const WaveField& phi, std::span<const double> v, double beta,
                      const Grid& grid);

/// 1/2 sum over grid edges of |forward difference|^2, trapezoid-weighted in
/// the transverse directions. Agrees with the kinetic part of energy() by
/// summation by parts.
double kinetic_by_differences(const WaveField& phi, const Grid& grid);

/// Weighted inner product Re <a, b>.
double inner(std::span<const double> a, std::span<const double> b, const Grid& grid);

}  // namespace gpegap
