#pragma once

#include <array>
#include <span>
#include <vector>

#include "gpegap/functional.hpp"
#include "gpegap/grid.hpp"

namespace gpegap {

/// Symmetry class a solve is constrained to.
///
/// OddInX1   phi(M x) = -phi(x), M the mirror through the x_1 midline.
/// Rotation  phi(R x) = i phi(x), R the quarter turn about the x_1x_2 center
///           (winding number 1 vortex, square cross-section required).
/// RingShift phi(x + L_1/4 e_1) = i phi(x) on a periodic grid (winding 1
///           along the x_1 ring).
enum class SymmetryClass { None, OddInX1, Rotation, RingShift };

/// Checks that the grid supports the class; throws InvalidArgument otherwise.
void check_symmetry_support(SymmetryClass cls, const Grid& grid);

/// Orthogonal projection onto the symmetry class (in place).
void project(SymmetryClass cls, WaveField& phi, const Grid& grid);

/// max|V(x) - V(T x)| / max|V| for the class generator T.
double potential_asymmetry(SymmetryClass cls, std::span<const double> v, const Grid& grid);

/// max|phi - P phi| / max|phi|.
double symmetry_defect(SymmetryClass cls, const WaveField& phi, const Grid& grid);

/// Projector with precomputed node maps for repeated use on one grid.
class SymmetryProjector {
 public:
  SymmetryProjector(SymmetryClass cls, const Grid& grid);

  SymmetryClass symmetry() const { return cls_; }
  /// Projects in place and returns the defect max|phi - P phi| / max|phi|.
  double apply(WaveField& phi) const;

 private:
  SymmetryClass cls_;
  std::array<std::vector<std::size_t>, 4> maps_;
};

/// Phase circulation / 2pi around the vortex core (Rotation) or along the
/// x_1 ring (RingShift). Other classes return 0.
double winding_number(SymmetryClass cls, const WaveField& phi, const Grid& grid);

}  // namespace gpegap
