#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "wavelife/error.hpp"
#include "wavelife/fd_solver.hpp"
#include "wavelife/model.hpp"

using namespace wavelife;

namespace {

Monomial term(double c, int a, int b, int d, bool abs = false) {
  Monomial m{c, a, b, d, {abs && a > 0, abs && b > 0, abs && d > 0}};
  return m;
}

NonlinearitySpec sharp() { return NonlinearitySpec::classify({term(1, 0, 3, 0, true), term(1, 4, 0, 0, true)}); }
NonlinearitySpec combined() { return NonlinearitySpec::classify({term(1, 2, 1, 0), term(1, 4, 0, 0)}); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::Config;
}

}  // namespace

TEST_CASE("classify examples") {
  const auto s1 = NonlinearitySpec::classify({term(1, 2, 1, 0)});
  CHECK(s1.alpha() == 2);
  CHECK_FALSE(s1.beta0().has_value());

  const auto s2 = sharp();
  CHECK(s2.alpha() == 2);
  REQUIRE(s2.beta0().has_value());
  CHECK(*s2.beta0() == 3);

  const auto s3 = combined();
  CHECK(s3.alpha() == 2);
  CHECK(*s3.beta0() == 3);
}

TEST_CASE("classify errors") {
  CHECK(code_of([] { NonlinearitySpec::classify({}); }) == Errc::EmptyForce);
  CHECK(code_of([] { NonlinearitySpec::classify({term(1, 1, 0, 0)}); }) == Errc::DegenerateOrder);
  CHECK(code_of([] { NonlinearitySpec::classify({term(1, 3, 0, 0)}, {term(1, 0, 0, 0)}); }) == Errc::InvalidTerm);
  CHECK(code_of([] { NonlinearitySpec::classify({term(std::nan(""), 3, 0, 0)}); }) == Errc::InvalidTerm);
  // a coefficient of degree 0 in b would make alpha 0
  CHECK(code_of([] { NonlinearitySpec::classify({term(1, 3, 0, 0)}, {}, {term(1, 0, 0, 0)}); }) == Errc::InvalidTerm);
}

TEST_CASE("alpha takes the quasilinear coefficients into account") {
  const auto s = NonlinearitySpec::classify({term(1, 0, 4, 0)}, {term(1, 2, 0, 0)}, {term(1, 0, 0, 3)});
  CHECK(s.alpha() == 2);
  CHECK(s.is_quasilinear());
}

TEST_CASE("beta0 only inside [alpha + 1, 2 alpha - 1]") {
  CHECK_FALSE(NonlinearitySpec::classify({term(1, 0, 3, 0), term(1, 5, 0, 0)}).beta0().has_value());  // 4 = 2 alpha
  CHECK_FALSE(NonlinearitySpec::classify({term(1, 0, 3, 0), term(1, 3, 0, 0)}).beta0().has_value());  // 2 < alpha + 1
  CHECK(*NonlinearitySpec::classify({term(1, 0, 4, 0), term(1, 5, 0, 0)}).beta0() == 4);             // alpha 3
}

TEST_CASE("classify is idempotent and canonical") {
  const auto s = NonlinearitySpec::classify({term(2, 4, 0, 0, true), term(1, 0, 3, 0, true), term(-1, 4, 0, 0)});
  const auto again = NonlinearitySpec::classify(s.f_terms(), s.b_terms(), s.a0_terms());
  CHECK(again == s);
  // |u|^4 == u^4, so both merge into one term with coefficient 1.
  REQUIRE(s.f_terms().size() == 2);
  int pure = 0;
  for (const auto& m : s.f_terms())
    if (m.pure_u()) {
      ++pure;
      CHECK(m.coeff == 1.0);
      CHECK_FALSE(m.abs[0]);
    }
  CHECK(pure == 1);
  CHECK(canonicalize({term(1, 3, 0, 0), term(-1, 3, 0, 0)}).empty());
}

TEST_CASE("pure-u and derivative parts") {
  const auto s = combined();
  REQUIRE(s.pure_u_part().size() == 1);
  CHECK(s.pure_u_part()[0].a == 4);
  REQUIRE(s.derivative_part().size() == 1);
  CHECK(s.derivative_part()[0].b == 1);
}

TEST_CASE("eval_force examples") {
  CHECK(eval_force(combined(), 1, 1, 0) == 2.0);
  CHECK(eval_force(sharp(), 0, -2, 5) == 8.0);
  CHECK(eval_force(sharp(), 0, 0, 0) == 0.0);
  CHECK(eval_force(combined(), 0, 0, 0) == 0.0);
  CHECK(eval_force(combined(), -1, 1, 0) == 2.0);
  CHECK(eval_force(combined(), 1, -1, 0) == 0.0);
}

TEST_CASE("checked evaluation reports overflow") {
  CHECK(code_of([] { eval_force(sharp(), 1e100, 1e100, 0); }) == Errc::NonFinite);
  const auto q = NonlinearitySpec::classify({term(1, 3, 0, 0)}, {term(1, 2, 0, 0)}, {term(0.5, 0, 0, 2)});
  CHECK(eval_b(q, 2, 0, 0) == 4.0);
  CHECK(eval_a0(q, 0, 0, 2) == 2.0);
  CHECK(code_of([] {
          const auto q2 = NonlinearitySpec::classify({term(1, 3, 0, 0)}, {term(1, 2, 0, 0)});
          eval_b(q2, 1e200, 0, 0);
        }) == Errc::NonFinite);
}

TEST_CASE("order majorant: F(lambda w) <= lambda^{1+alpha} Fabs(|w|)") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0), L(0.0, 1.0);
  const NonlinearitySpec specs[] = {
      sharp(), combined(),
      NonlinearitySpec::classify({term(-3, 1, 1, 1), term(0.5, 0, 0, 5, true), term(2, 3, 2, 0)})};
  for (const auto& s : specs)
    for (int i = 0; i < 2000; ++i) {
      const double u = U(rng), ut = U(rng), ux = U(rng), lam = L(rng);
      const double lhs = eval_force(s, lam * u, lam * ut, lam * ux);
      const double rhs = std::pow(lam, 1 + s.alpha()) * eval_force_abs(s, std::fabs(u), std::fabs(ut), std::fabs(ux));
      CHECK(lhs <= rhs * (1 + 1e-12) + 1e-300);
    }
}

TEST_CASE("even_in_x") {
  CHECK(sharp().even_in_x());
  CHECK(NonlinearitySpec::classify({term(1, 0, 0, 2), term(1, 3, 0, 0)}).even_in_x());
  CHECK_FALSE(NonlinearitySpec::classify({term(1, 1, 0, 1)}).even_in_x());
  CHECK(NonlinearitySpec::classify({term(1, 1, 0, 1, true)}).even_in_x());
}

TEST_CASE("linear spec") {
  const auto s = NonlinearitySpec::linear();
  CHECK(s.is_linear());
  CHECK(s.alpha() == 0);
  CHECK(s.force(1, 2, 3) == 0.0);
}

TEST_CASE("bump profiles") {
  CHECK(bump(0.0, 1.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(bump(1.0, 1.0) == 0.0);
  CHECK(bump(-1.5, 1.0) == 0.0);
  CHECK(bump(2.0, 2.0, 2) == 0.0);
  // analytic derivatives against central differences
  for (double x : {-0.7, -0.2, 0.1, 0.55, 0.9})
    for (int k = 0; k < 3; ++k) {
      const double h = 1e-5;
      const double fd = (bump(x + h, 1.0, k) - bump(x - h, 1.0, k)) / (2 * h);
      CHECK(bump(x, 1.0, k + 1) == doctest::Approx(fd).epsilon(1e-6));
    }
  const Profile d{ProfileKind::BumpDerivative, 2.0};
  CHECK(d.eval(0.3, 1.5) == doctest::Approx(2.0 * 1.5 * bump(0.3, 1.5, 1)));
  CHECK(d.zero_mean());
  CHECK_FALSE(Profile{ProfileKind::Bump, 1.0}.zero_mean());
  CHECK(Profile{ProfileKind::Zero, 1.0}.eval(0.0, 1.0) == 0.0);
}

TEST_CASE("initial data requires R >= 1") {
  CHECK(code_of([] { InitialData(Profile{}, Profile{}, 0.5); }) == Errc::OutOfRange);
  const InitialData d(Profile{ProfileKind::Bump, 1.0}, Profile{ProfileKind::BumpDerivative, 1.0}, 2.0);
  CHECK(d.g_zero_mean());
}

TEST_CASE("grid covers the cone") {
  const Grid g = Grid::make(0.1, 0.5, 3.0, 1.0);
  CHECK(g.dt == doctest::Approx(0.05));
  CHECK(g.nt == 61);
  CHECK(g.t_max == doctest::Approx(3.0));
  CHECK(g.covers_cone(1.0));
  CHECK(g.x(g.origin) == 0.0);
  CHECK(g.x_min == -g.x_max);
  CHECK(Grid::make(0.1, 0.5, 3.01, 1.0).t_max >= 3.01);
  CHECK(code_of([] { Grid::make(0.1, 1.5, 3.0, 1.0); }) == Errc::OutOfRange);
  CHECK(code_of([] { Grid::make(-0.1, 0.5, 3.0, 1.0); }) == Errc::OutOfRange);
}

TEST_CASE("field bookkeeping") {
  Field f(Grid::make(0.5, 0.5, 1.0, 1.0));
  CHECK(f.valid_up_to() == -1);
  f.at(2, 3) = -4.0;
  f.set_valid_up_to(2);
  CHECK(f.sup_norm() == 4.0);
  CHECK(f.row(2)[3] == -4.0);
}

TEST_CASE("cone leakage flags values outside the light cone") {
  const Grid g = Grid::make(0.1, 0.5, 1.0, 1.0);
  Field f(g);
  f.set_valid_up_to(g.nt - 1);
  f.at(0, g.origin + 5) = 1.0;  // x = 0.5 inside
  CHECK(cone_leakage(f, 1.0) == 0.0);
  f.at(0, g.origin + 15) = 2.0;  // x = 1.5 > 0 + 1 + 0.2
  CHECK(cone_leakage(f, 1.0) == 2.0);
}
