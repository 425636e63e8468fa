#pragma once

#include <span>
#include <vector>

#include "gpegap/grid.hpp"

namespace gpegap::linear {

/// Solves a tridiagonal system in place of `rhs`. lower[0] and upper[n-1]
/// are ignored. No pivoting; callers supply diagonally dominant systems.
void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs);

/// Cyclic variant: lower[0] couples row 0 to x[n-1], upper[n-1] couples
/// row n-1 to x[0]. Sherman-Morrison on top of solve_tridiagonal.
void solve_cyclic_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                              std::span<const double> upper, std::span<double> rhs);

struct CgResult {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

/// Operator u -> shift*u - 1/2 Delta_h u + q*u on `grid`. Self-adjoint in the
/// grid's weighted inner product for every boundary condition.
class ShiftedHamiltonian {
 public:
  ShiftedHamiltonian(const Grid& grid, double shift, std::span<const double> q)
      : grid_(grid), shift_(shift), q_(q) {}

  void apply(std::span<const double> in, std::span<double> out) const;
  double diagonal(std::size_t i) const {
    return shift_ + 0.5 * grid_.neg_laplacian_diagonal() + q_[i];
  }
  const Grid& grid() const { return grid_; }
  double shift() const { return shift_; }
  std::span<const double> q() const { return q_; }

 private:
  const Grid& grid_;
  double shift_;
  std::span<const double> q_;
};

/// Jacobi-preconditioned CG in the weighted inner product. x holds the
/// initial guess on entry.
CgResult conjugate_gradient(const ShiftedHamiltonian& op, std::span<const double> rhs,
                            std::span<double> x, double rel_tol, int max_iter);

/// Solves op x = rhs: tridiagonal elimination in 1D, CG otherwise.
CgResult solve(const ShiftedHamiltonian& op, std::span<const double> rhs, std::span<double> x,
               double rel_tol, int max_iter);

}  // namespace gpegap::linear
