#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gpegap/error.hpp"
#include "gpegap/grid.hpp"
#include "gpegap/potential.hpp"
#include "gpegap/symmetry.hpp"

using namespace gpegap;
using std::numbers::pi;

namespace {

Grid grid_1d(double L, int n, Boundary bc) {
  const double len[] = {L};
  const int cnt[] = {n};
  return Grid(BoxDomain::from_lengths(len), cnt, bc);
}

Grid grid_2d(double L1, double L2, int n1, int n2, Boundary bc) {
  const double len[] = {L1, L2};
  const int cnt[] = {n1, n2};
  return Grid(BoxDomain::from_lengths(len), cnt, bc);
}

}  // namespace

TEST_CASE("node layout follows the boundary condition") {
  auto d = grid_1d(2.0, 99, Boundary::Dirichlet);
  CHECK(d.spacing(0) == doctest::Approx(2.0 / 100));
  CHECK(d.coordinate(0, 0) == doctest::Approx(0.02));
  CHECK(d.zero_on_boundary());

  auto p = grid_1d(1.0, 64, Boundary::Periodic);
  CHECK(p.spacing(0) == doctest::Approx(1.0 / 64));
  CHECK(p.coordinate(0, 0) == 0.0);

  auto nm = grid_1d(2.0, 101, Boundary::Neumann);
  CHECK(nm.spacing(0) == doctest::Approx(0.02));
  CHECK(nm.coordinate(0, 100) == doctest::Approx(2.0));
  CHECK_FALSE(nm.zero_on_boundary());
}

TEST_CASE("trapezoid measure equals the box volume") {
  for (auto bc : {Boundary::Dirichlet, Boundary::Neumann, Boundary::Periodic}) {
    auto g = grid_2d(2.0, 1.5, 40, 30, bc);
    CHECK(g.measure() == doctest::Approx(3.0).epsilon(1e-12));
  }
  auto p = grid_2d(2.0, 1.5, 40, 30, Boundary::Periodic);
  std::vector<double> one(p.size(), 1.0);
  CHECK(p.integrate(one) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("row-major storage with x_1 slowest") {
  auto g = grid_2d(1.0, 1.0, 9, 11, Boundary::Dirichlet);
  CHECK(g.stride(1) == 1);
  CHECK(g.stride(0) == 11);
  const auto idx = g.index({3, 4, 0});
  CHECK(idx == 3u * 11 + 4);
  const auto back = g.unravel(idx);
  CHECK(back[0] == 3);
  CHECK(back[1] == 4);
  CHECK(g.mirror(0, 0) == 8);
}

TEST_CASE("discrete Laplacian on sine and cosine modes") {
  const int n = 63;
  auto d = grid_1d(2.0, n, Boundary::Dirichlet);
  const double h = d.spacing(0);
  const double k = 2 * pi / 2.0;
  std::vector<double> u(n), out(n);
  for (int i = 0; i < n; ++i) u[i] = std::sin(k * d.coordinate(0, i));
  d.apply_laplacian(u, out);
  const double lam = 2.0 * (1.0 - std::cos(k * h)) / (h * h);
  for (int i = 0; i < n; ++i) CHECK(out[i] == doctest::Approx(-lam * u[i]).epsilon(1e-10));

  auto nm = grid_1d(2.0, 65, Boundary::Neumann);
  const double hn = nm.spacing(0);
  std::vector<double> c(65), oc(65);
  for (int i = 0; i < 65; ++i) c[i] = std::cos(pi / 2.0 * nm.coordinate(0, i));
  nm.apply_laplacian(c, oc);
  const double lamn = 2.0 * (1.0 - std::cos(pi / 2.0 * hn)) / (hn * hn);
  for (int i = 0; i < 65; ++i) CHECK(oc[i] == doctest::Approx(-lamn * c[i]).scale(1.0).epsilon(1e-9));
}

TEST_CASE("domain validation") {
  const double bad[] = {-1.0};
  CHECK_THROWS_AS(BoxDomain::from_lengths(bad).validate(), Error);
  const double sq[] = {2.0, 2.0};
  CHECK(BoxDomain::from_lengths(sq).diameter() == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(parse_boundary("periodic") == Boundary::Periodic);
  CHECK_THROWS(parse_boundary("robin"));
}

TEST_CASE("potentials and convexity") {
  auto g = grid_1d(2.0, 101, Boundary::Dirichlet);
  const auto v = eval_potential(potential::NegativeQuadratic{-10.0}, g);
  CHECK(v[0] == doctest::Approx(-10.0 * std::pow(g.coordinate(0, 0), 2)));
  CHECK(is_convex(potential::NegativeQuadratic{-10.0}) == false);
  CHECK(is_convex(potential::Zero{}) == true);
  CHECK(*convexity_modulus(potential::Harmonic{{1.0, 2.0}}) == doctest::Approx(1.0));
  CHECK_FALSE(is_convex(potential::Tabulated{{1.0}}).has_value());
  CHECK(potential_dimension(potential::Harmonic{{1.0, 1.0}}) == 2);

  const auto s = eval_potential(potential::Sine{10.0, 10.0, 1.0}, g);
  CHECK(mirror_asymmetry(s, g) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(mirror_asymmetry(v, g) > 0.5);
  const auto q = eval_potential(potential::ShiftedQuadratic{2.0, {1.0}}, g);
  CHECK(mirror_asymmetry(q, g) < 1e-12);
}

TEST_CASE("tabulated potential round trip") {
  const char* path = "gpegap_tab_test.txt";
  {
    std::ofstream out(path);
    out << "1.5\n2.5\n# comment-free file\n";
  }
  CHECK_THROWS_AS(load_tabulated(path), Error);
  {
    std::ofstream out(path);
    out << "1.5\n2.5\n3.5\n";
  }
  const auto t = load_tabulated(path);
  REQUIRE(t.values.size() == 3);
  CHECK(t.values[2] == 3.5);
  std::remove(path);
  CHECK_THROWS_AS(load_tabulated("/nonexistent/file"), Error);
}

TEST_CASE("symmetry projectors are idempotent") {
  auto g = grid_2d(1.0, 1.0, 24, 24, Boundary::Dirichlet);
  WaveField phi;
  phi.re.resize(g.size());
  phi.im.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    phi.re[i] = std::sin(0.37 * i) + 0.1;
    phi.im[i] = std::cos(0.11 * i);
  }
  for (auto cls : {SymmetryClass::OddInX1, SymmetryClass::Rotation}) {
    WaveField p = phi;
    project(cls, p, g);
    CHECK(symmetry_defect(cls, p, g) < 1e-14);
    SymmetryProjector proj(cls, g);
    WaveField q = phi;
    proj.apply(q);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(q.re[i] == doctest::Approx(p.re[i]));
  }
  auto rect = grid_2d(2.0, 1.0, 24, 12, Boundary::Dirichlet);
  CHECK_THROWS_AS(check_symmetry_support(SymmetryClass::Rotation, rect), Error);
}
