#include <cmath>
#include <cstring>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gpegap/gpegap.h"

extern "C" int gpegap_header_is_c(void);

using std::numbers::pi;

namespace {

gpegap_problem* box_1d(double L, int n, gpegap_bc bc = GPEGAP_BC_DIRICHLET) {
  gpegap_problem* p = nullptr;
  REQUIRE(gpegap_problem_new(1, &L, &n, bc, &p) == GPEGAP_OK);
  return p;
}

}  // namespace

TEST_CASE("header compiles as C") { CHECK(gpegap_header_is_c() == 1); }

TEST_CASE("library metadata") {
  CHECK(std::strlen(gpegap_version()) > 0);
  CHECK(std::strcmp(gpegap_status_string(GPEGAP_PARTIAL_FAILURE), "") != 0);
  gpegap_mode m;
  CHECK(gpegap_mode_parse("vortex", &m) == GPEGAP_OK);
  CHECK(m == GPEGAP_MODE_VORTEX);
  CHECK(gpegap_mode_parse("spiral", &m) == GPEGAP_INVALID_ARGUMENT);
}

TEST_CASE("invalid arguments set the error message") {
  gpegap_problem* p = nullptr;
  const double L = -1.0;
  const int n = 10;
  CHECK(gpegap_problem_new(1, &L, &n, GPEGAP_BC_DIRICHLET, &p) == GPEGAP_INVALID_ARGUMENT);
  CHECK(p == nullptr);
  CHECK(std::strlen(gpegap_last_error()) > 0);
  CHECK(gpegap_problem_new(1, nullptr, &n, GPEGAP_BC_DIRICHLET, &p) == GPEGAP_INVALID_ARGUMENT);
  CHECK(gpegap_solve(nullptr, 0.0, GPEGAP_MODE_GROUND, nullptr, nullptr) ==
        GPEGAP_INVALID_ARGUMENT);
}

TEST_CASE("solve and report") {
  auto* p = box_1d(2.0, 512);
  CHECK(gpegap_problem_nodes(p) == 512);
  CHECK(gpegap_problem_default_mode(p) == GPEGAP_MODE_ODD);
  gpegap_report* r = nullptr;
  REQUIRE(gpegap_solve(p, 0.0, GPEGAP_MODE_GROUND, nullptr, &r) == GPEGAP_OK);
  gpegap_report_summary s;
  REQUIRE(gpegap_report_get(r, &s) == GPEGAP_OK);
  CHECK(s.converged == 1);
  CHECK(s.energy == doctest::Approx(pi * pi / 8).epsilon(5e-4));
  CHECK(gpegap_report_field_is_complex(r) == 0);
  std::vector<double> re(gpegap_report_field_size(r)), im(re.size());
  CHECK(gpegap_report_field(r, re.data(), im.data(), re.size()) == GPEGAP_OK);
  CHECK(im[10] == 0.0);
  CHECK(gpegap_report_field(r, re.data(), nullptr, 3) == GPEGAP_INVALID_ARGUMENT);
  gpegap_report_free(r);

  gpegap_solver_options o;
  gpegap_solver_options_default(&o);
  o.max_iter = 2;
  r = nullptr;
  CHECK(gpegap_solve(p, 50.0, GPEGAP_MODE_GROUND, &o, &r) == GPEGAP_NOT_CONVERGED);
  REQUIRE(r != nullptr);
  REQUIRE(gpegap_report_get(r, &s) == GPEGAP_OK);
  CHECK(s.converged == 0);
  gpegap_report_free(r);
  gpegap_problem_free(p);
}

TEST_CASE("sweep, bounds and conjecture check") {
  const double L = 1.0;
  const int n = 128;
  gpegap_problem* p = nullptr;
  REQUIRE(gpegap_problem_new(1, &L, &n, GPEGAP_BC_PERIODIC, &p) == GPEGAP_OK);
  const double betas[] = {0.0, 1.0, 10.0};
  gpegap_sweep* sw = nullptr;
  REQUIRE(gpegap_gap_sweep(p, betas, 3, GPEGAP_MODE_DEFAULT, nullptr, 1, &sw) == GPEGAP_OK);
  CHECK(gpegap_sweep_size(sw) == 3);
  gpegap_gap_row row;
  REQUIRE(gpegap_sweep_row(sw, 2, &row) == GPEGAP_OK);
  CHECK(row.status == GPEGAP_ROW_OK);
  CHECK(row.E_g == doctest::Approx(5.0));
  CHECK(gpegap_sweep_row(sw, 3, &row) == GPEGAP_INVALID_ARGUMENT);

  gpegap_bounds b;
  REQUIRE(gpegap_sweep_bounds(sw, &b) == GPEGAP_OK);
  CHECK(std::strcmp(b.family, "periodic") == 0);
  CHECK(b.delta_E == doctest::Approx(2 * pi * pi));

  gpegap_conjecture c;
  REQUIRE(gpegap_sweep_check(sw, 0.1, 1.0, &c) == GPEGAP_OK);
  CHECK(c.applicable == 1);
  CHECK(c.trend_E == GPEGAP_TREND_CONSTANT);
  double mE, mmu, sE, smu;
  REQUIRE(gpegap_sweep_row_margins(sw, 0, &mE, &mmu, &sE, &smu) == GPEGAP_OK);
  CHECK(mE == doctest::Approx(c.margin_E).epsilon(1e-6));
  gpegap_sweep_free(sw);
  gpegap_problem_free(p);
}

TEST_CASE("partial sweeps are returned") {
  auto* p = box_1d(2.0, 128);
  gpegap_solver_options o;
  gpegap_solver_options_default(&o);
  o.max_iter = 3;
  const double betas[] = {0.0, 20.0};
  gpegap_sweep* sw = nullptr;
  CHECK(gpegap_gap_sweep(p, betas, 2, GPEGAP_MODE_ODD, &o, 1, &sw) == GPEGAP_PARTIAL_FAILURE);
  REQUIRE(sw != nullptr);
  gpegap_gap_row row;
  REQUIRE(gpegap_sweep_row(sw, 1, &row) == GPEGAP_OK);
  CHECK(row.status != GPEGAP_ROW_OK);
  CHECK(std::strlen(gpegap_sweep_row_message(sw, 1)) > 0);
  gpegap_sweep_free(sw);
  gpegap_problem_free(p);
}

TEST_CASE("asymptotic queries") {
  gpegap_asym_query q;
  gpegap_asym_query_default(&q);
  q.problem = GPEGAP_ASYM_BOX;
  q.dim = 1;
  q.params[0] = 2.0;
  q.beta = 1000.0;
  q.regime = GPEGAP_ASYM_STRONG;
  gpegap_asym_values v;
  REQUIRE(gpegap_asym_evaluate(&q, &v) == GPEGAP_OK);
  CHECK(v.mu_g == doctest::Approx(522.861).epsilon(1e-5));
  CHECK(v.extrapolated == 0);
  q.beta = 0.1;
  REQUIRE(gpegap_asym_evaluate(&q, &v) == GPEGAP_OK);
  CHECK(v.extrapolated == 1);
}

TEST_CASE("potential setters validate their input") {
  auto* p = box_1d(2.0, 64);
  const double bad_gamma[] = {-1.0};
  CHECK(gpegap_problem_set_harmonic(p, bad_gamma) == GPEGAP_INVALID_ARGUMENT);
  std::vector<double> vals(63, 1.0);
  CHECK(gpegap_problem_set_tabulated(p, vals.data(), vals.size()) == GPEGAP_INVALID_ARGUMENT);
  vals.resize(64);
  CHECK(gpegap_problem_set_tabulated(p, vals.data(), vals.size()) == GPEGAP_OK);
  CHECK(gpegap_problem_load_tabulated(p, "/nonexistent/potential.txt") == GPEGAP_IO_ERROR);
  CHECK(gpegap_problem_set_negative_quadratic(p, -10.0) == GPEGAP_OK);
  CHECK(std::strlen(gpegap_problem_describe(p)) > 0);
  gpegap_problem_free(p);
}
