#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "wavelife/error.hpp"
#include "wavelife/linear_kernel.hpp"
#include "wavelife/norms.hpp"
#include "wavelife/picard.hpp"

using namespace wavelife;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::Config;
}

// 5 x 5 grid: x in {-1, -0.5, 0, 0.5, 1}, t in {0, 0.5, 1, 1.5, 2}.
Grid tiny_grid() {
  Grid g;
  g.dx = 0.5;
  g.dt = 0.5;
  g.nx = 5;
  g.nt = 5;
  g.origin = 2;
  g.t_max = 2.0;
  g.x_min = -1.0;
  g.x_max = 1.0;
  return g;
}

}  // namespace

TEST_CASE("weight p") {
  CHECK(weight_p(2, 3) == Rational(1, 9));
  CHECK(weight_p(3, 4) == Rational(1, 8));
  CHECK(code_of([] { weight_p(2, 4); }) == Errc::OutOfRange);
  CHECK(code_of([] { weight_p(2, 2); }) == Errc::OutOfRange);
  for (int a = 2; a <= 12; ++a)
    for (int b = a + 1; b < 2 * a; ++b) {
      const Rational p = weight_p(a, b);
      CHECK(p > Rational(0));
      CHECK(p <= Rational(1, a + 1));
    }
}

TEST_CASE("capital R") {
  CHECK(capital_r(1.0, 0.0, 2, 3) == 2.0);
  CHECK(capital_r(0.0, 7.0, 2, 3) == 0.0);

  // Independent 50-digit evaluation of 0.01 * 11^{10/9} + 0.001 * 11^{5/3}.
  using big = boost::multiprecision::cpp_bin_float_50;
  const big oracle = big("0.01") * pow(big(11), big(10) / 9) + big("0.001") * pow(big(11), big(5) / 3);
  CHECK(capital_r(0.1, 10.0, 2, 3) == doctest::Approx(oracle.convert_to<double>()).epsilon(1e-14));

  double prev = 0.0;
  for (double E = 0.0; E <= 2.0; E += 0.25) {
    const double r = capital_r(E, 3.0, 3, 5);
    CHECK(r >= prev);
    prev = r;
  }
  prev = 0.0;
  for (double T = 0.0; T <= 20.0; T += 2.5) {
    const double r = capital_r(0.3, T, 3, 5);
    CHECK(r >= prev);
    prev = r;
  }
  CHECK(code_of([] { capital_r(-1.0, 1.0, 2, 3); }) == Errc::OutOfRange);
}

TEST_CASE("positivity identity") {
  CHECK(positivity_identity_check(2, 3) == Rational(5, 9));
  CHECK(positivity_identity_check(2, 3) == Rational(1 * 5, 3 * 3));
  CHECK(positivity_identity_check(3, 4) == Rational(3, 8));
  CHECK(positivity_identity_check(3, 5) == Rational(7, 10));  // 2 * 7 / (4 * 5)
  for (int a = 2; a <= 12; ++a)
    for (int b = a + 1; b < 2 * a; ++b) {
      const Rational v = positivity_identity_check(a, b);
      CHECK(v > Rational(0));
      CHECK(v == Rational((b - a) * (2 + b), (a + 1) * b));
    }
  CHECK(code_of([] { positivity_identity_check(2, 4); }) == Errc::OutOfRange);
}

TEST_CASE("norm report of zero") {
  const Grid g = Grid::make(0.1, 0.5, 2.0, 1.0);
  Field u(g);
  u.set_valid_up_to(g.nt - 1);
  const auto r = norm_report(u, 2, 3, 1.0, 2.0, 2);
  CHECK(r.norm1 == 0.0);
  CHECK(r.norm2 == 0.0);
  CHECK(r.d_st == 0.0);
  REQUIRE(r.energy_norms.size() == 3);
  for (double e : r.energy_norms) CHECK(e == 0.0);
  CHECK(r.p_weight == Rational(1, 9));
  REQUIRE(r.r_et.has_value());
  CHECK(*r.r_et == 0.0);
}

TEST_CASE("free solution with zero-mean g lives in the exterior band") {
  const InitialData d(Profile{ProfileKind::Zero, 1.0}, Profile{ProfileKind::BumpDerivative, 1.0}, 1.0);
  const Grid g = Grid::make(0.02, 0.5, 5.0, 1.0);
  const auto r = norm_report(free_field(d, 0.5, g), 2, 3, 1.0, 5.0, 2);
  CHECK(r.norm1 <= 1e-10 * 0.5);
  CHECK(r.norm2 > 0.01);
}

TEST_CASE("norm1 of a field supported in the exterior band is exactly zero") {
  const Grid g = Grid::make(0.1, 0.5, 3.0, 1.0);
  Field u(g);
  for (int n = 0; n < g.nt; ++n)
    for (int j = 0; j < g.nx; ++j)
      if (ConeMask::in_exterior(g.x(j), g.t(n), 1.0)) u.at(n, j) = 1.0 + g.x(j) * g.x(j);
  u.set_valid_up_to(g.nt - 1);
  const auto r = norm_report(u, 2, 3, 1.0, 3.0, 0);
  CHECK(r.norm1 == 0.0);
  CHECK(r.norm2 > 0.0);
}

TEST_CASE("norm report on a 5 x 5 quadratic field matches hand sums") {
  // u = x + 2t + t x: every difference used is exact on quadratics.
  const Grid g = tiny_grid();
  Field u(g);
  for (int n = 0; n < 5; ++n)
    for (int j = 0; j < 5; ++j) u.at(n, j) = g.x(j) + 2 * g.t(n) + g.t(n) * g.x(j);
  u.set_valid_up_to(4);
  const auto r = norm_report(u, 2, 3, 1.0, 2.0, 1);

  // Interior D (t - |x| >= 1): the largest weighted value is at (x, t) = (1, 2): 4^{1/9} * 7.
  CHECK(r.norm1 == doctest::Approx(std::pow(4.0, 1.0 / 9.0) * 7.0).epsilon(1e-14));
  // Exterior band: t = 1.5, x = 1 gives 1 + 3 + 1.5 = 5.5.
  CHECK(r.norm2 == doctest::Approx(5.5).epsilon(1e-14));

  // At time t, u_t = 2 + x and u_x = 1 + t; trapezoid weights (1/2, 1, 1, 1, 1/2) * dx.
  // sum w (2 + x)^2 dx = (0.5 + 2.25 + 4 + 6.25 + 4.5) * 0.5 = 8.75; sum w (1 + t)^2 dx = 2 (1 + t)^2.
  // k = 1: u_tt = u_xx = 0, u_tx = 1, so e1 = 2 sqrt(2) at every time.
  const double e0_last = std::sqrt(8.75 + 2 * 9.0);
  CHECK(r.energy_norms[0] == doctest::Approx(e0_last).epsilon(1e-14));
  CHECK(r.energy_norms[1] == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(r.d_st == doctest::Approx(r.norm1 + r.norm2 + e0_last + 2 * std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("t_horizon limits the rows") {
  const Grid g = tiny_grid();
  Field u(g);
  for (int n = 0; n < 5; ++n)
    for (int j = 0; j < 5; ++j) u.at(n, j) = g.t(n);
  u.set_valid_up_to(4);
  // Only t <= 1 counts: D is the single node (0, 1) with weight 2^{1/9}.
  const auto r = norm_report(u, 2, 3, 1.0, 1.0, 0);
  CHECK(r.norm2 == 1.0);
  CHECK(r.norm1 == doctest::Approx(std::pow(2.0, 1.0 / 9.0)).epsilon(1e-14));
}

TEST_CASE("invalid orders give an unweighted report") {
  const Grid g = tiny_grid();
  Field u(g);
  u.set_valid_up_to(4);
  const auto r = norm_report(u, 2, std::nullopt, 1.0, 2.0, 0);
  CHECK(r.p_weight == Rational(0));
  CHECK_FALSE(r.r_et.has_value());
  CHECK_THROWS_AS(norm_report(u, 2, 3, 1.0, 2.0, 3), Error);
}

TEST_CASE("contraction probe") {
  const auto spec = NonlinearitySpec::classify({Monomial{1, 2, 1, 0}, Monomial{1, 4, 0, 0}});
  const InitialData d(Profile{ProfileKind::Bump, 1.0}, Profile{ProfileKind::BumpDerivative, 1.0}, 1.0);
  PicardOptions o;
  o.keep_iterates = true;

  std::vector<ProbeRun> runs;
  // Small enough that R + sqrt R is negligible: D(u0) is about 150 eps here,
  // and the gain term only drops below eps once eps is under ~1e-5.
  for (auto [eps, T] : {std::pair{1e-6, 1.0}, {3e-6, 2.0}, {1e-5, 1.0}}) {
    const auto rep = picard_solve(spec, d, eps, Grid::make(0.05, 0.5, T, 1.0), o);
    runs.push_back(make_probe_run(rep, eps, 2, 3, 1.0, 2));
  }
  const auto s = contraction_probe(runs, 2, 3);
  CHECK(s.C > 0.0);
  CHECK(s.per_run_C.size() == 3);
  CHECK(s.stable);
  CHECK(s.spread <= 10.0);
  // the defining inequality holds with the fitted constant
  for (const auto& run : runs) {
    const double E = *std::max_element(run.iterate_norms.begin(), run.iterate_norms.end());
    const double R = capital_r(E, run.T, 2, 3);
    for (std::size_t k = 0; k + 1 < run.iterate_norms.size(); ++k)
      CHECK(run.iterate_norms[k + 1] <= s.C * (run.eps + (R + std::sqrt(R)) * (E + run.iterate_norms[k])) * (1 + 1e-12));
  }

  CHECK(code_of([&] { contraction_probe({runs[0], runs[1]}, 2, 3); }) == Errc::InsufficientRuns);
  auto bad = runs;
  bad[1].converged = false;
  CHECK(code_of([&] { contraction_probe(bad, 2, 3); }) == Errc::NonConverged);
}

TEST_CASE("outside the small-data regime the fitted constant drifts") {
  const auto spec = NonlinearitySpec::classify({Monomial{1, 2, 1, 0}, Monomial{1, 4, 0, 0}});
  const InitialData d(Profile{ProfileKind::Bump, 1.0}, Profile{ProfileKind::BumpDerivative, 1.0}, 1.0);
  PicardOptions o;
  o.keep_iterates = true;
  std::vector<ProbeRun> runs;
  for (double eps : {0.05, 0.1, 0.2}) {
    const auto rep = picard_solve(spec, d, eps, Grid::make(0.05, 0.5, 1.0, 1.0), o);
    runs.push_back(make_probe_run(rep, eps, 2, 3, 1.0, 2));
  }
  // R(E, T) dominates and each C scales like a negative power of E
  const auto s = contraction_probe(runs, 2, 3);
  CHECK(s.per_run_C[0] > s.per_run_C[1]);
  CHECK(s.per_run_C[1] > s.per_run_C[2]);
  CHECK_FALSE(s.stable);
}

TEST_CASE("linear runs agree with semilinear runs at tiny eps") {
  PicardOptions o;
  o.keep_iterates = true;
  const InitialData d(Profile{ProfileKind::Bump, 1.0}, Profile{ProfileKind::BumpDerivative, 1.0}, 1.0);
  const auto spec = NonlinearitySpec::classify({Monomial{1, 2, 1, 0}, Monomial{1, 4, 0, 0}});
  std::vector<ProbeRun> lin, semi;
  for (auto [eps, T] : {std::pair{1e-6, 1.0}, {3e-6, 2.0}, {1e-5, 1.0}}) {
    const Grid g = Grid::make(0.05, 0.5, T, 1.0);
    lin.push_back(make_probe_run(picard_solve(NonlinearitySpec::linear(), d, eps, g, o), eps, 2, 3, 1.0, 2));
    semi.push_back(make_probe_run(picard_solve(spec, d, eps, g, o), eps, 2, 3, 1.0, 2));
  }
  const auto a = contraction_probe(lin, 2, 3), b = contraction_probe(semi, 2, 3);
  CHECK(a.stable);
  CHECK(a.spread < 2.0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a.per_run_C[i] == doctest::Approx(b.per_run_C[i]).epsilon(1e-6));
}
