#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gpegap/error.hpp"
#include "gpegap/gaps.hpp"

using namespace gpegap;
using std::numbers::pi;

namespace {

Fingerprint box_print(std::vector<double> L, Boundary bc = Boundary::Dirichlet) {
  ProblemSpec s;
  s.domain = BoxDomain::from_lengths(L);
  s.n.assign(L.size(), 16);
  s.bc = bc;
  Discretization disc(s);
  return fingerprint(disc, default_excited_mode(disc));
}

GapCurve flat_curve(const Fingerprint& fp, std::vector<double> betas, double dE, double dmu) {
  GapCurve c;
  c.problem = fp;
  for (double b : betas) {
    GapRow r;
    r.beta = b;
    r.delta_E = dE;
    r.delta_mu = dmu;
    c.rows.push_back(r);
  }
  return c;
}

}  // namespace

TEST_CASE("bound families") {
  const auto b1 = conjecture_bounds(box_print({2.0}));
  CHECK(b1.family == BoundFamily::DirichletNondegenerate);
  CHECK(b1.delta_E == doctest::Approx(3 * pi * pi / 8));
  CHECK(b1.delta_mu == doctest::Approx(3 * pi * pi / 8));

  const auto b2 = conjecture_bounds(box_print({1.0, 1.0}));
  CHECK(b2.family == BoundFamily::DirichletDegenerate);

  const auto bp = conjecture_bounds(box_print({1.0}, Boundary::Periodic));
  CHECK(bp.family == BoundFamily::Periodic);
  CHECK(bp.delta_E == doctest::Approx(2 * pi * pi));

  const auto bn = conjecture_bounds(box_print({2.0}, Boundary::Neumann));
  CHECK(bn.family == BoundFamily::Neumann);
  CHECK(bn.delta_E == doctest::Approx(pi * pi / 8));
}

TEST_CASE("nonconvex potentials make the bound not applicable") {
  ProblemSpec s;
  const std::vector<double> L{2.0};
  s.domain = BoxDomain::from_lengths(L);
  s.n = {32};
  s.potential = potential::NegativeQuadratic{-10.0};
  Discretization disc(s);
  const auto fp = fingerprint(disc, ExcitedMode::Branch1D);
  const auto b = conjecture_bounds(fp);
  CHECK_FALSE(b.applicable);
  const auto rep = check_conjecture(flat_curve(fp, {0.0, 1.0}, 1.0, 1.0), b);
  CHECK_FALSE(rep.applicable);
  CHECK(rep.violations.empty());
  CHECK(conjecture_bounds(fp, true).applicable);
}

TEST_CASE("margins, violations and slack") {
  const auto fp = box_print({2.0});
  const auto b = conjecture_bounds(fp);
  auto curve = flat_curve(fp, {0.0, 1.0, 10.0}, b.delta_E + 0.5, b.delta_mu + 0.25);
  auto rep = check_conjecture(curve, b);
  CHECK(rep.holds);
  CHECK(rep.margin_E == doctest::Approx(0.5));
  CHECK(rep.margin_mu == doctest::Approx(0.25));
  REQUIRE(rep.row_margin_E.size() == 3);

  curve.rows[1].delta_E = b.delta_E - 1e-4;
  rep = check_conjecture(curve, b);
  CHECK_FALSE(rep.holds);
  CHECK(rep.violations.size() == 1);
  CHECK(rep.violations[0].beta == 1.0);
  CHECK(check_conjecture(curve, b, 1e-3).holds);

  curve.rows[2].status = RowStatus::ExcitedFailed;
  rep = check_conjecture(curve, b, 1e-3);
  CHECK(std::isnan(rep.row_margin_E[2]));
}

TEST_CASE("trend classification") {
  CHECK(classify_trend({1.0, 2.0, 3.0}) == Trend::Increasing);
  CHECK(classify_trend({3.0, 2.0, 1.0}) == Trend::Decreasing);
  CHECK(classify_trend({1.0, 1.0, 1.0}) == Trend::Constant);
  CHECK(classify_trend({1.0, 3.0, 2.0}) == Trend::Neither);
}

TEST_CASE("least-squares line") {
  const auto [a, b] = fit_line({1.0, 2.0, 3.0, 4.0}, {3.0, 5.0, 7.0, 9.0});
  CHECK(a == doctest::Approx(1.0));
  CHECK(b == doctest::Approx(2.0));
}

TEST_CASE("gap curves flag failures and nonpositive gaps") {
  const auto fp = box_print({2.0});
  std::vector<SolveReport> g(2), e(2);
  for (int i = 0; i < 2; ++i) {
    g[i].status = SolveStatus::Converged;
    e[i].status = SolveStatus::Converged;
    g[i].energy.energy = 1.0;
    g[i].energy.chemical_potential = 1.0;
    e[i].energy.energy = 2.0;
    e[i].energy.chemical_potential = 2.0;
  }
  e[1].energy.energy = 0.5;
  auto c = build_gap_curve(fp, g, e, {0.0, 1.0}, true);
  CHECK(c.rows[0].status == RowStatus::Ok);
  CHECK(c.rows[1].status == RowStatus::NonPositiveGap);
  CHECK(c.rows[1].delta_E == doctest::Approx(-0.5));
  e[0].status = SolveStatus::NotConverged;
  c = build_gap_curve(fp, g, e, {0.0, 1.0}, true);
  CHECK(c.rows[0].status == RowStatus::ExcitedFailed);
  CHECK_FALSE(c.all_ok());
  CHECK_THROWS_AS(build_gap_curve(fp, g, e, {0.0, 1.0}, false), Error);
}

TEST_CASE("comparison against the asymptotics") {
  ProblemSpec s;
  const std::vector<double> L{2.0};
  s.domain = BoxDomain::from_lengths(L);
  s.n = {256};
  Discretization disc(s);
  const auto sw = run_gap_sweep(disc, {0.0, 0.5, 200.0}, SolverConfig{}, ExcitedMode::OddInX1);
  const auto cmp = compare_numeric_asymptotic(sw.curve);
  REQUIRE(cmp.rows.size() == 3);
  CHECK(cmp.rows[0].available);
  CHECK(std::abs(cmp.rows[0].rel_diff_E) < 1e-4);
  CHECK(std::abs(cmp.rows[2].rel_diff_E) < 0.05);
}
