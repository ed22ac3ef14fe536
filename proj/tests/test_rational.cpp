#include <doctest.h>

#include <cstdint>
#include <limits>

#include "wavelife/error.hpp"
#include "wavelife/rational.hpp"

using wavelife::Errc;
using wavelife::Error;
using wavelife::Rational;

TEST_CASE("normalized on construction") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(6, -4).den() == 2);
  CHECK(Rational(0, -7) == Rational(0));
  CHECK(Rational(0, -7).den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), Error);
}

TEST_CASE("arithmetic") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
  CHECK(-Rational(2, 3) == Rational(-2, 3));
  CHECK(Rational(9, 5).str() == "9/5");
  CHECK(Rational(4).str() == "4");
  CHECK(Rational(9, 5).to_double() == doctest::Approx(1.8));
}

TEST_CASE("ordering") {
  CHECK(Rational(3, 2) < Rational(9, 5));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(max(Rational(3, 2), Rational(8, 5)) == Rational(8, 5));
  CHECK(min(Rational(3, 2), Rational(8, 5)) == Rational(3, 2));
  // Cross products that overflow int64 still compare correctly.
  const std::int64_t big = std::numeric_limits<std::int64_t>::max() / 2;
  CHECK(Rational(big, big - 1) < Rational(big - 1, big - 2));
}

TEST_CASE("overflow is an error") {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  try {
    (void)(Rational(big) + Rational(1));
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Overflow);
  }
  CHECK_THROWS_AS((void)(Rational(big, 3) * Rational(big, 5)), Error);
}
