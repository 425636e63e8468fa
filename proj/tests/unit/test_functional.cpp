#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gpegap/error.hpp"
#include "gpegap/field_io.hpp"
#include "gpegap/functional.hpp"
#include "gpegap/linear.hpp"

using namespace gpegap;
using std::numbers::pi;

namespace {

Grid box_1d(int n, Boundary bc = Boundary::Dirichlet) {
  const double len[] = {2.0};
  const int cnt[] = {n};
  return Grid(BoxDomain::from_lengths(len), cnt, bc);
}

WaveField sine_mode(const Grid& g, int k) {
  std::vector<double> re(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) re[i] = std::sin(k * pi * g.coordinate(0, i) / 2.0);
  return normalize(WaveField::real(std::move(re)), g);
}

}  // namespace

TEST_CASE("energy of a linear mode") {
  auto g = box_1d(255);
  const auto phi = sine_mode(g, 1);
  std::vector<double> v(g.size(), 0.0);
  const auto e = energy(phi, v, 0.0, g);
  const double h = g.spacing(0);
  const double lam = (1.0 - std::cos(pi / 2.0 * h)) / (h * h);
  CHECK(e.energy == doctest::Approx(lam).epsilon(1e-12));
  CHECK(eigen_residual(phi, v, 0.0, g) < 1e-10);
  // int sin^4 over (0,2) with unit-norm scaling gives 3/4
  CHECK(e.interaction == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("mu = E + beta/2 int |phi|^4") {
  auto g = box_1d(101);
  std::vector<double> re(g.size()), v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coordinate(0, i);
    re[i] = x * (2.0 - x) * (1.0 + 0.3 * x);
    v[i] = 0.5 * x * x;
  }
  const auto phi = normalize(WaveField::real(re), g);
  for (double beta : {0.0, 3.0, 250.0}) {
    const auto e = energy(phi, v, beta, g);
    CHECK(e.chemical_potential - e.energy == doctest::Approx(0.5 * beta * e.interaction));
    CHECK(e.energy ==
          doctest::Approx(e.kinetic + e.potential + 0.5 * beta * e.interaction).epsilon(1e-14));
  }
}

TEST_CASE("kinetic energy by summation by parts") {
  for (auto bc : {Boundary::Dirichlet, Boundary::Neumann, Boundary::Periodic}) {
    const double len[] = {2.0, 1.0};
    const int cnt[] = {31, 17};
    Grid g(BoxDomain::from_lengths(len), cnt, bc);
    WaveField phi;
    phi.re.resize(g.size());
    phi.im.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      phi.re[i] = std::sin(0.3 * i) + 1.0;
      phi.im[i] = std::cos(0.7 * i);
    }
    std::vector<double> v(g.size(), 0.0);
    const auto e = energy(phi, v, 0.0, g);
    CHECK(e.kinetic == doctest::Approx(kinetic_by_differences(phi, g)).epsilon(1e-11));
  }
}

TEST_CASE("normalization rejects the zero field") {
  auto g = box_1d(11);
  CHECK_THROWS_AS(normalize(WaveField::real(std::vector<double>(g.size(), 0.0)), g), Error);
}

TEST_CASE("tridiagonal solvers") {
  const std::size_t n = 9;
  std::vector<double> lo(n, -1.0), di(n, 4.0), up(n, -1.0), x(n), b(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(1.0 + i);
  auto apply = [&](bool cyclic) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = di[i] * x[i];
      if (i > 0) s += lo[i] * x[i - 1];
      else if (cyclic) s += lo[0] * x[n - 1];
      if (i + 1 < n) s += up[i] * x[i + 1];
      else if (cyclic) s += up[n - 1] * x[0];
      b[i] = s;
    }
  };
  apply(false);
  linear::solve_tridiagonal(lo, di, up, b);
  for (std::size_t i = 0; i < n; ++i) CHECK(b[i] == doctest::Approx(x[i]).epsilon(1e-13));
  apply(true);
  linear::solve_cyclic_tridiagonal(lo, di, up, b);
  for (std::size_t i = 0; i < n; ++i) CHECK(b[i] == doctest::Approx(x[i]).epsilon(1e-13));
}

TEST_CASE("conjugate gradient on a 2D shifted Hamiltonian") {
  const double len[] = {1.0, 1.0};
  const int cnt[] = {20, 20};
  for (auto bc : {Boundary::Dirichlet, Boundary::Neumann, Boundary::Periodic}) {
    Grid g(BoxDomain::from_lengths(len), cnt, bc);
    std::vector<double> q(g.size(), 0.5), x(g.size()), rhs(g.size()), sol(g.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) x[i] = std::cos(0.1 * i);
    linear::ShiftedHamiltonian op(g, 3.0, q);
    op.apply(x, rhs);
    const auto r = linear::solve(op, rhs, sol, 1e-12, 2000);
    CHECK(r.converged);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(sol[i] == doctest::Approx(x[i]).epsilon(1e-8));
  }
}

TEST_CASE("field files round trip") {
  const double len[] = {2.0, 2.0};
  const int cnt[] = {10, 8};
  Grid g(BoxDomain::from_lengths(len), cnt, Boundary::Periodic);
  WaveField phi;
  for (std::size_t i = 0; i < g.size(); ++i) {
    phi.re.push_back(0.25 * i);
    phi.im.push_back(-1.0 / (1.0 + i));
  }
  write_field("gpegap_field_test.bin", phi, g, 7.5);
  FieldHeader hdr;
  const auto back = read_field("gpegap_field_test.bin", &hdr);
  CHECK(hdr.dim == 2);
  CHECK(hdr.n[0] == 10);
  CHECK(hdr.n[1] == 8);
  CHECK(hdr.complex);
  CHECK(hdr.beta == 7.5);
  CHECK(hdr.bc == Boundary::Periodic);
  CHECK(back.re == phi.re);
  CHECK(back.im == phi.im);
  std::remove("gpegap_field_test.bin");
  std::remove("gpegap_field_test.bin.hdr");
}
