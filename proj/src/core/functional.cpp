#include "gpegap/functional.hpp"

#include <cmath>

#include "gpegap/error.hpp"

namespace gpegap {

namespace {

void check_finite(std::span<const double> x, const char* what) {
  for (double v : x) {
    if (!std::isfinite(v)) fail(ErrorCode::NumericalFault, std::string(what) + " contains NaN/Inf");
  }
}

void check_sizes(const WaveField& phi, std::span<const double> v, const Grid& grid) {
  require(phi.size() == grid.size(), "field size does not match the grid");
  require(phi.real_valued() || phi.im.size() == phi.re.size(), "inconsistent complex field");
  require(v.size() == grid.size(), "potential size does not match the grid");
}

}  // namespace

double inner(std::span<const double> a, std::span<const double> b, const Grid& grid) {
  const auto w = grid.weights();
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * a[i] * b[i];
  return s;
}

std::vector<double> density(const WaveField& phi) {
  std::vector<double> rho(phi.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    rho[i] = phi.re[i] * phi.re[i];
    if (!phi.real_valued()) rho[i] += phi.im[i] * phi.im[i];
  }
  return rho;
}

double norm(const WaveField& phi, const Grid& grid) {
  return std::sqrt(grid.integrate(density(phi)));
}

WaveField normalize(WaveField phi, const Grid& grid) {
  require(phi.size() == grid.size(), "field size does not match the grid");
  const double n = norm(phi, grid);
  if (!std::isfinite(n)) fail(ErrorCode::NumericalFault, "field norm is not finite");
  require(n > 0.0, "cannot normalize a zero field");
  const double s = 1.0 / n;
  for (double& x : phi.re) x *= s;
  for (double& x : phi.im) x *= s;
  return phi;
}

EnergyBreakdown energy(const WaveField& phi, std::span<const double> v, double beta,
                       const Grid& grid) {
  check_sizes(phi, v, grid);
  require(beta >= 0.0 && std::isfinite(beta), "beta must be finite and nonnegative");
  check_finite(phi.re, "field");
  check_finite(phi.im, "field");
  check_finite(v, "potential");

  std::vector<double> lap(grid.size());
  EnergyBreakdown e;
  grid.apply_laplacian(phi.re, lap);
  e.kinetic = -0.5 * inner(phi.re, lap, grid);
  if (!phi.real_valued()) {
    grid.apply_laplacian(phi.im, lap);
    e.kinetic += -0.5 * inner(phi.im, lap, grid);
  }
  const auto rho = density(phi);
  const auto w = grid.weights();
  for (std::size_t i = 0; i < rho.size(); ++i) {
    e.potential += w[i] * v[i] * rho[i];
    e.interaction += w[i] * rho[i] * rho[i];
  }
  e.energy = e.kinetic + e.potential + 0.5 * beta * e.interaction;
  e.chemical_potential = e.energy + 0.5 * beta * e.interaction;
  return e;
}

WaveField apply_hamiltonian(const WaveField& phi, std::span<const double> v, double beta,
                            const Grid& grid) {
  check_sizes(phi, v, grid);
  check_finite(phi.re, "field");
  check_finite(phi.im, "field");
  const auto rho = density(phi);
  WaveField out;
  auto apply = [&](const std::vector<double>& in, std::vector<double>& dst) {
    dst.assign(in.size(), 0.0);
    grid.apply_laplacian(in, dst);
    for (std::size_t i = 0; i < in.size(); ++i) {
      dst[i] = -0.5 * dst[i] + (v[i] + beta * rho[i]) * in[i];
    }
  };
  apply(phi.re, out.re);
  if (!phi.real_valued()) apply(phi.im, out.im);
  return out;
}

double eigen_residual(const WaveField& phi, std::span<const double> v, double beta,
                      const Grid& grid) {
  const auto e = energy(phi, v, beta, grid);
  auto hphi = apply_hamiltonian(phi, v, beta, grid);
  const double mu = e.chemical_potential;
  const auto w = grid.weights();
  double s = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double r = hphi.re[i] - mu * phi.re[i];
    s += w[i] * r * r;
    if (!phi.real_valued()) {
      const double q = hphi.im[i] - mu * phi.im[i];
      s += w[i] * q * q;
    }
  }
  return std::sqrt(s);
}

double kinetic_by_differences(const WaveField& phi, const Grid& grid) {
  require(phi.size() == grid.size(), "field size does not match the grid");
  const int d = grid.dim();
  double total = 0.0;
  auto accumulate = [&](const std::vector<double>& f) {
    for (int a = 0; a < d; ++a) {
      const double h = grid.spacing(a);
      const int n = grid.count(a);
      for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        const auto ijk = grid.unravel(idx);
        double wperp = 1.0;
        for (int b = 0; b < d; ++b) {
          if (b != a) wperp *= grid.axis_weights(b)[ijk[b]];
        }
        const int i = ijk[a];
        // Edge (i, i+1); the edge leaving the last node exists for periodic
        // wraparound and for the implicit zero Dirichlet boundary.
        double next = 0.0;
        bool has_edge = true;
        if (i + 1 < n) {
          next = f[idx + grid.stride(a)];
        } else if (grid.boundary() == Boundary::Periodic) {
          next = f[idx - static_cast<std::size_t>(n - 1) * grid.stride(a)];
        } else if (grid.zero_on_boundary()) {
          next = 0.0;
        } else {
          has_edge = false;
        }
        if (has_edge) {
          const double df = (next - f[idx]) / h;
          total += 0.5 * wperp * h * df * df;
        }
        if (i == 0 && grid.zero_on_boundary()) {
          const double df = f[idx] / h;
          total += 0.5 * wperp * h * df * df;
        }
      }
    }
  };
  accumulate(phi.re);
  if (!phi.real_valued()) accumulate(phi.im);
  return total;
}

}  // namespace gpegap
