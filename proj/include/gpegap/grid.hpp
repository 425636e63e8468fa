#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gpegap {

inline constexpr int kMaxDim = 3;

enum class Boundary { Dirichlet, Neumann, Periodic, TruncatedWholeSpace };

std::string_view to_string(Boundary bc);
Boundary parse_boundary(std::string_view name);

/// Axis-aligned box prod_j [origin_j, origin_j + L_j].
///
/// Bounded-domain problems use origin 0, i.e. the box (0,L_1)x...x(0,L_d).
/// Truncated whole-space problems use a box centered at the origin.
struct BoxDomain {
  int dim = 1;
  std::array<double, kMaxDim> lengths{1.0, 1.0, 1.0};
  std::array<double, kMaxDim> origin{0.0, 0.0, 0.0};

  static BoxDomain from_lengths(std::span<const double> lengths);
  static BoxDomain centered(std::span<const double> half_lengths);

  void validate() const;
  double diameter() const;
  double volume() const;
  double center(int axis) const { return origin[axis] + 0.5 * lengths[axis]; }
  /// L_1 >= L_2 >= ... >= L_d.
  bool sorted_descending() const;
};

double diameter(const BoxDomain& domain);

/// Relative comparison used for the degenerate/nondegenerate split.
bool nearly_equal(double a, double b, double rel_tol = 1e-12);

/// Uniform tensor grid with BC-aware node layout and trapezoidal weights.
///
/// Dirichlet (and truncated whole space) grids hold interior nodes only,
/// h = L/(n+1). Periodic grids hold n nodes, h = L/n, with wraparound.
/// Neumann grids hold both endpoints, h = L/(n-1), and reflect through a
/// ghost node. Storage is row-major with x_1 the slowest index.
class Grid {
 public:
  Grid(const BoxDomain& domain, std::span<const int> counts, Boundary bc);

  int dim() const { return domain_.dim; }
  std::size_t size() const { return size_; }
  Boundary boundary() const { return bc_; }
  bool zero_on_boundary() const {
    return bc_ == Boundary::Dirichlet || bc_ == Boundary::TruncatedWholeSpace;
  }
  const BoxDomain& domain() const { return domain_; }

  int count(int axis) const { return n_[axis]; }
  double spacing(int axis) const { return h_[axis]; }
  std::size_t stride(int axis) const { return stride_[axis]; }
  double coordinate(int axis, int i) const { return first_[axis] + i * h_[axis]; }

  std::size_t index(std::array<int, kMaxDim> ijk) const;
  std::array<int, kMaxDim> unravel(std::size_t idx) const;
  /// Image of node index i under x -> 2c - x along `axis`.
  int mirror(int axis, int i) const;

  std::span<const double> weights() const { return weights_; }
  std::span<const double> axis_weights(int axis) const { return axis_weights_[axis]; }
  /// Weighted sum over stored nodes.
  double integrate(std::span<const double> f) const;
  /// Trapezoidal measure of the closed box, including boundary nodes that a
  /// Dirichlet grid does not store. Equals |Omega|.
  double measure() const;

  /// out = Delta_h in, second-order centered differences.
  void apply_laplacian(std::span<const double> in, std::span<double> out) const;
  /// Diagonal entry of -Delta_h (the same at every node).
  double neg_laplacian_diagonal() const { return neg_lap_diag_; }

 private:
  BoxDomain domain_;
  Boundary bc_;
  std::array<int, kMaxDim> n_{1, 1, 1};
  std::array<double, kMaxDim> h_{1.0, 1.0, 1.0};
  std::array<double, kMaxDim> first_{0.0, 0.0, 0.0};
  std::array<std::size_t, kMaxDim> stride_{1, 1, 1};
  std::size_t size_ = 0;
  double neg_lap_diag_ = 0.0;
  std::vector<double> weights_;
  std::array<std::vector<double>, kMaxDim> axis_weights_;
};

Grid make_grid(const BoxDomain& domain, std::span<const int> counts, Boundary bc);

}  // namespace gpegap
