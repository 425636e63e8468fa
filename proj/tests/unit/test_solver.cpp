#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gpegap/error.hpp"
#include "gpegap/gaps.hpp"
#include "gpegap/solver.hpp"

using namespace gpegap;
using std::numbers::pi;

namespace {

ProblemSpec box(std::vector<double> lengths, std::vector<int> n,
                Boundary bc = Boundary::Dirichlet) {
  ProblemSpec s;
  s.domain = BoxDomain::from_lengths(lengths);
  s.n = std::move(n);
  s.bc = bc;
  return s;
}

}  // namespace

TEST_CASE("backward-Euler steps stay on the unit sphere") {
  Discretization disc(box({2.0}, {200}));
  auto phi = initial_guess(disc, ExcitedMode::None);
  for (int it = 0; it < 50; ++it) {
    phi = befd_step(phi, disc.v_shifted, 40.0, 0.05, disc.grid).field;
    CHECK(norm(phi, disc.grid) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("energy history does not increase") {
  auto spec = box({2.0, 1.0}, {40, 20});
  spec.potential = potential::ShiftedQuadratic{3.0, {0.7, 0.4}};
  Discretization disc(spec);
  SolverConfig cfg;
  const auto r = solve_ground(disc, 30.0, cfg);
  REQUIRE(r.converged());
  REQUIRE(r.energy_history.size() > 2);
  for (std::size_t i = 1; i < r.energy_history.size(); ++i) {
    CHECK(r.energy_history[i] <= r.energy_history[i - 1] + 1e-13);
  }
}

TEST_CASE("linear limit and second-order convergence") {
  double prev_err = 0.0;
  for (int n : {63, 127, 255}) {
    Discretization disc(box({2.0}, {n}));
    SolverConfig cfg;
    const auto g = solve_ground(disc, 0.0, cfg);
    REQUIRE(g.converged());
    const double err = std::abs(g.energy.energy - pi * pi / 8.0);
    if (prev_err > 0.0) CHECK(prev_err / err == doctest::Approx(4.0).epsilon(0.02));
    prev_err = err;
  }
}

TEST_CASE("ground state is real and nonnegative") {
  auto spec = box({2.0}, {128});
  spec.potential = potential::Sine{10.0, 10.0, 1.0};
  Discretization disc(spec);
  const auto r = solve_ground(disc, 5.0, SolverConfig{});
  REQUIRE(r.converged());
  CHECK(r.field.real_valued());
  for (double x : r.field.re) CHECK(x >= -1e-10);
}

TEST_CASE("odd excited state keeps its antisymmetry") {
  Discretization disc(box({2.0}, {256}));
  SolverConfig cfg;
  cfg.mode = ExcitedMode::OddInX1;
  const auto r = solve_excited(disc, 50.0, cfg);
  REQUIRE(r.converged());
  CHECK(symmetry_defect(SymmetryClass::OddInX1, r.field, disc.grid) <= 1e-10);
  const auto& g = disc.grid;
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(r.field.re[i] == doctest::Approx(-r.field.re[g.mirror(0, static_cast<int>(i))]).scale(1.0).epsilon(1e-10));
  }
}

TEST_CASE("vortex solves keep winding number one") {
  Discretization disc(box({1.0, 1.0}, {40, 40}));
  SolverConfig cfg;
  cfg.mode = ExcitedMode::Vortex;
  const auto reps = continue_in_beta(disc, {0.0, 20.0, 80.0}, cfg);
  for (const auto& r : reps) {
    REQUIRE(r.converged());
    CHECK(r.winding == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(winding_number(SymmetryClass::Rotation, r.field, disc.grid) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("branch continuation agrees with the odd solve for a symmetric potential") {
  auto spec = box({2.0}, {256});
  spec.potential = potential::ShiftedQuadratic{2.0, {1.0}};
  Discretization disc(spec);
  SolverConfig cfg;
  cfg.mode = ExcitedMode::OddInX1;
  const auto odd = solve_excited(disc, 25.0, cfg);
  cfg.mode = ExcitedMode::Branch1D;
  const auto br = solve_excited(disc, 25.0, cfg);
  REQUIRE(odd.converged());
  REQUIRE(br.converged());
  CHECK(br.energy.energy == doctest::Approx(odd.energy.energy).epsilon(1e-7));
  CHECK(br.energy.chemical_potential == doctest::Approx(odd.energy.chemical_potential).epsilon(1e-7));
}

TEST_CASE("branch continuation on the concave demo potential") {
  auto spec = box({2.0}, {512});
  spec.potential = potential::NegativeQuadratic{-10.0};
  Discretization disc(spec);
  SolverConfig cfg;
  cfg.mode = ExcitedMode::Branch1D;
  const auto r = solve_excited(disc, 30.0, cfg);
  REQUIRE(r.converged());
  // one interior sign change
  int changes = 0;
  for (std::size_t i = 1; i < r.field.re.size(); ++i) {
    if (r.field.re[i - 1] * r.field.re[i] < 0.0) ++changes;
  }
  CHECK(changes == 1);
  CHECK(r.residual < 1e-6);
}

TEST_CASE("unsupported requests are rejected") {
  Discretization disc(box({2.0}, {64}));
  SolverConfig cfg;
  cfg.mode = ExcitedMode::Vortex;
  CHECK_THROWS_AS(solve_excited(disc, 1.0, cfg), Error);
  cfg.mode = ExcitedMode::None;
  CHECK_THROWS_AS(solve_excited(disc, 1.0, cfg), Error);
  CHECK_THROWS_AS(solve_ground(disc, -1.0, SolverConfig{}), Error);
  Discretization d2(box({1.0, 1.0}, {16, 16}));
  cfg.mode = ExcitedMode::Branch1D;
  CHECK_THROWS_AS(solve_excited(d2, 1.0, cfg), Error);
}

TEST_CASE("degenerate classification and default mode") {
  Discretization sq(box({1.0, 1.0}, {16, 16}));
  CHECK(is_degenerate(sq.spec));
  CHECK(default_excited_mode(sq) == ExcitedMode::Vortex);
  Discretization rect(box({2.0, 1.0}, {16, 16}));
  CHECK_FALSE(is_degenerate(rect.spec));
  CHECK(default_excited_mode(rect) == ExcitedMode::OddInX1);
  CHECK(parse_excited_mode("branch") == ExcitedMode::Branch1D);
}

TEST_CASE("periodic states are exact") {
  Discretization disc(box({1.0}, {128}, Boundary::Periodic));
  SolverConfig cfg;
  const auto g = solve_ground(disc, 10.0, cfg);
  REQUIRE(g.converged());
  CHECK(g.energy.energy == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(g.energy.chemical_potential == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("jobs do not change sweep results") {
  Discretization disc(box({2.0}, {128}));
  const std::vector<double> betas{0.0, 1.0, 10.0, 50.0};
  const auto a = run_gap_sweep(disc, betas, SolverConfig{}, ExcitedMode::OddInX1, 1);
  const auto b = run_gap_sweep(disc, betas, SolverConfig{}, ExcitedMode::OddInX1, 2);
  REQUIRE(a.curve.rows.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(a.curve.rows[i].E_g == b.curve.rows[i].E_g);
    CHECK(a.curve.rows[i].E_1 == b.curve.rows[i].E_1);
  }
  const auto c = run_gap_sweep(disc, betas, SolverConfig{}, ExcitedMode::OddInX1, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(c.curve.rows[i].delta_E == doctest::Approx(a.curve.rows[i].delta_E).epsilon(1e-6));
  }
}
