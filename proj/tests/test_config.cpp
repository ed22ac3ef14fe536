#include <doctest.h>

#include <string>

#include "wavelife/config.hpp"
#include "wavelife/error.hpp"

using namespace wavelife;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "run.json");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Config);
    return e.what();
  }
  FAIL("no error for: " << text);
  return {};
}

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("full document") {
  const auto c = parse_config(R"({
    "force": [{"coeff": 1, "b": 3, "abs": true}, {"a": 4}],
    "data": {"f": {"kind": "bump", "amp": 0.5}, "g": "bump_derivative", "R": 2},
    "grid": {"dx": 0.02, "courant": 0.4, "t_max": 5},
    "eps": 0.6, "solver": "picard", "tol": 1e-9, "max_iter": 20, "norms_K": 1,
    "sweep": {"eps_max": 0.8, "eps_min": 0.3, "points": 6, "levels": 4, "trust_tol": 0.1, "budget": 50},
    "synthetic": {"slope": 1.5, "noise": 0.01}
  })");
  CHECK(c.spec.alpha() == 2);
  CHECK(*c.spec.beta0() == 3);
  CHECK(c.spec.f_terms().size() == 2);
  CHECK(c.data.f.kind == ProfileKind::Bump);
  CHECK(c.data.f.amplitude == 0.5);
  CHECK(c.data.g_zero_mean());
  CHECK(c.data.R == 2.0);
  CHECK(c.dx == 0.02);
  CHECK(c.courant == 0.4);
  CHECK(c.eps == 0.6);
  CHECK(c.solver == SolverKind::Picard);
  CHECK(c.max_iter == 20);
  CHECK(c.norms_K == 1);
  REQUIRE(c.eps_values.size() == 6);
  CHECK(c.eps_values.back() == 0.3);
  CHECK(c.levels == 4);
  REQUIRE(c.synthetic.has_value());
  CHECK(c.synthetic->slope == 1.5);
  CHECK(c.synthetic->prefactor == 1.0);

  const auto s = c.sweep_config(3);
  CHECK(s.lifespan.dx == 0.02);
  CHECK(s.lifespan.levels == 4);
  CHECK(s.lifespan.budget == 50.0);
  CHECK(s.workers == 3);
}

TEST_CASE("defaults") {
  const auto c = parse_config("{}");
  CHECK(c.spec.is_linear());
  CHECK(c.courant == 0.5);
  CHECK(c.eps_values.size() == 8);
  CHECK(c.eps_values[1] == doctest::Approx(0.64));
  CHECK(c.levels == 3);
  CHECK(c.trust_tol == 0.05);
  CHECK(c.verdict_tol == 0.2);
  CHECK(c.solver == SolverKind::Fd);
  CHECK_FALSE(c.synthetic.has_value());
}

TEST_CASE("explicit eps list and ratio") {
  CHECK(parse_config(R"({"sweep": {"eps": [0.5, 0.4, 0.3]}})").eps_values.size() == 3);
  const auto c = parse_config(R"({"sweep": {"eps_max": 0.5, "ratio": 0.5, "points": 4}})");
  REQUIRE(c.eps_values.size() == 4);
  CHECK(c.eps_values[3] == doctest::Approx(0.0625));
}

TEST_CASE("per-factor abs flags") {
  const auto c = parse_config(R"({"force": [{"a": 1, "b": 2, "abs": [true, false, false]}]})");
  REQUIRE(c.spec.f_terms().size() == 1);
  CHECK(c.spec.f_terms()[0].abs[0]);
}

TEST_CASE("syntax errors carry the line") {
  const auto msg = error_of("{\n  \"eps\": 0.5,\n  \"grid\": {\"dx\": }\n}");
  CHECK(has(msg, "run.json:3:"));
  CHECK(has(msg, "syntax error"));
}

TEST_CASE("field errors carry the path") {
  CHECK(has(error_of(R"({"force": [{"a": 4}, {"a": "two"}]})"), "force[1].a"));
  CHECK(has(error_of(R"({"force": [{"a": 4, "e": 1}]})"), "force[0].e: unknown key"));
  CHECK(has(error_of(R"({"data": {"g": "gauss"}})"), "data.g"));
  CHECK(has(error_of(R"({"data": {"R": 0.5}})"), "data"));
  CHECK(has(error_of(R"({"grid": {"courant": 1.5}})"), "grid.courant"));
  CHECK(has(error_of(R"({"grid": {"dx": -1}})"), "grid.dx"));
  CHECK(has(error_of(R"({"solver": "rk4"})"), "solver"));
  CHECK(has(error_of(R"({"norms_K": 3})"), "norms_K"));
  CHECK(has(error_of(R"({"sweep": {"eps": [0.5, -0.1]}})"), "sweep.eps[1]"));
  CHECK(has(error_of(R"({"sweep": {"eps_max": 0.3, "eps_min": 0.5}})"), "sweep"));
  CHECK(has(error_of(R"({"epsilon": 0.3})"), "epsilon: unknown key"));
  CHECK(has(error_of(R"([1, 2])"), "expected an object"));
  CHECK(has(error_of(R"({"force": [{"a": 1}]})"), "DegenerateOrder"));
  CHECK(has(error_of(R"({"b_coef": [{"a": 2}]})"), "EmptyForce"));
}

TEST_CASE("load_config reports missing files") {
  try {
    load_config("/nonexistent/wavelife.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Config);
    CHECK(has(e.what(), "cannot open"));
  }
}

TEST_CASE("round trip of the spec and data") {
  const auto c = parse_config(R"({"force": [{"b": 3, "abs": true}, {"a": 4}], "data": {"f": "zero", "R": 1.5}})");
  const auto again = parse_config(config_to_json(c).dump());
  CHECK(again.spec == c.spec);
  CHECK(again.data == c.data);
}
