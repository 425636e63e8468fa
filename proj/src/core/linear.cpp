#include "gpegap/linear.hpp"

#include <cmath>

#include "gpegap/error.hpp"
#include "gpegap/functional.hpp"

namespace gpegap::linear {

void solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                       std::span<const double> upper, std::span<double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n);
  double denom = diag[0];
  if (denom == 0.0) fail(ErrorCode::LinearSolveFailed, "zero pivot in tridiagonal solve");
  c[0] = upper[0] / denom;
  rhs[0] /= denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag[i] - lower[i] * c[i - 1];
    if (denom == 0.0) fail(ErrorCode::LinearSolveFailed, "zero pivot in tridiagonal solve");
    c[i] = i + 1 < n ? upper[i] / denom : 0.0;
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

void solve_cyclic_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                              std::span<const double> upper, std::span<double> rhs) {
  const std::size_t n = diag.size();
  const double alpha = upper[n - 1];  // A(n-1, 0)
  const double beta = lower[0];       // A(0, n-1)
  const double gamma = -diag[0];
  std::vector<double> b(diag.begin(), diag.end());
  b[0] -= gamma;
  b[n - 1] -= alpha * beta / gamma;
  solve_tridiagonal(lower, b, upper, rhs);
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;
  solve_tridiagonal(lower, b, upper, u);
  const double fact = (rhs[0] + beta * rhs[n - 1] / gamma) / (1.0 + u[0] + beta * u[n - 1] / gamma);
  for (std::size_t i = 0; i < n; ++i) rhs[i] -= fact * u[i];
}

void ShiftedHamiltonian::apply(std::span<const double> in, std::span<double> out) const {
  grid_.apply_laplacian(in, out);
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i] = -0.5 * out[i] + (shift_ + q_[i]) * in[i];
  }
}

namespace {

// Weighted sums split over four accumulators to break the add dependency chain.
double wdot(const double* w, const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += w[i] * a[i] * b[i];
    s1 += w[i + 1] * a[i + 1] * b[i + 1];
    s2 += w[i + 2] * a[i + 2] * b[i + 2];
    s3 += w[i + 3] * a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += w[i] * a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

}  // namespace

CgResult conjugate_gradient(const ShiftedHamiltonian& op, std::span<const double> rhs,
                            std::span<double> x, double rel_tol, int max_iter) {
  const Grid& grid = op.grid();
  const auto w = grid.weights();
  const std::size_t n = rhs.size();
  std::vector<double> r(n), z(n), p(n), ap(n), inv_diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = op.diagonal(i);
    if (!(d > 0.0)) fail(ErrorCode::LinearSolveFailed, "implicit operator is not positive");
    inv_diag[i] = 1.0 / d;
  }
  CgResult res;
  const double bnorm = std::sqrt(inner(rhs, rhs, grid));
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    res.converged = true;
    return res;
  }
  op.apply(x, ap);
  double rz = 0.0;
  double rr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = rhs[i] - ap[i];
    z[i] = inv_diag[i] * r[i];
    p[i] = z[i];
    rz += w[i] * r[i] * z[i];
    rr += w[i] * r[i] * r[i];
  }
  double rnorm = std::sqrt(rr);
  while (rnorm > rel_tol * bnorm && res.iterations < max_iter) {
    op.apply(p, ap);
    const double pap = wdot(w.data(), p.data(), ap.data(), n);
    if (!(pap > 0.0)) fail(ErrorCode::LinearSolveFailed, "CG breakdown: operator not positive");
    const double alpha = rz / pap;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
      z[i] = inv_diag[i] * r[i];
    }
    const double rz_new = wdot(w.data(), r.data(), z.data(), n);
    rr = wdot(w.data(), r.data(), r.data(), n);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    rnorm = std::sqrt(rr);
    ++res.iterations;
  }
  res.relative_residual = rnorm / bnorm;
  res.converged = rnorm <= rel_tol * bnorm;
  return res;
}

CgResult solve(const ShiftedHamiltonian& op, std::span<const double> rhs, std::span<double> x,
               double rel_tol, int max_iter) {
  const Grid& grid = op.grid();
  if (grid.dim() != 1) return conjugate_gradient(op, rhs, x, rel_tol, max_iter);

  const int n = grid.count(0);
  const double h = grid.spacing(0);
  const double off = -0.5 / (h * h);
  std::vector<double> lower(n, off), upper(n, off), diag(n);
  for (int i = 0; i < n; ++i) diag[i] = op.diagonal(static_cast<std::size_t>(i));
  if (grid.boundary() == Boundary::Neumann) {
    upper[0] = 2.0 * off;
    lower[n - 1] = 2.0 * off;
  }
  std::copy(rhs.begin(), rhs.end(), x.begin());
  if (grid.boundary() == Boundary::Periodic) {
    solve_cyclic_tridiagonal(lower, diag, upper, x);
  } else {
    lower[0] = 0.0;
    upper[n - 1] = 0.0;
    solve_tridiagonal(lower, diag, upper, x);
  }
  CgResult res;
  res.iterations = 1;
  res.converged = true;
  return res;
}

}  // namespace gpegap::linear
