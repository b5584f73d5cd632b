#include "orbicrystal/scalars.hpp"

#include <doctest.h>

using namespace orbicrystal;

TEST_CASE("qpow uses the uniformizer") {
  Context ctx = Context::make(2, 3, Rational(1, 2));
  CHECK(ctx.q() == Rational(1, 4096));
  // q^(1/2a) = u^b
  CHECK(qpow(ctx, 1, 4) == Rational(1, 8));
  CHECK(qpow(ctx, -1, 6) == Rational(4));
  CHECK(qpow(ctx, 0, 1) == 1);
  CHECK_THROWS_AS(qpow(ctx, 1, 5), PreconditionError);
}

TEST_CASE("ipow handles negative exponents") {
  CHECK(ipow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(ipow(Rational(5), 0) == 1);
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
  CHECK_THROWS_AS(parse_rational("abc"), ConfigError);
}

TEST_CASE("context validation") {
  Context ctx;
  ctx.a = 2;
  ctx.p = {Rational(1)};
  CHECK_THROWS_AS(ctx.validate(), ConfigError);
  ctx.p = {Rational(3), Rational(2)};
  CHECK_NOTHROW(ctx.validate());
  CHECK(ctx.P(1) == Rational(3, 2));
  const Context n = ctx.normalized();
  CHECK(n.p_at(2) == 1);
  CHECK(n.p_at(1) == Rational(3, 2));
  Context bad = Context::make(1, 1, Rational(1, 2));
  bad.u = 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  Context big = Context::make(1, 1, Rational(1, 2));
  big.u = 3;
  CHECK_THROWS_AS(big.require_convergent("test"), PreconditionError);
}

TEST_CASE("precision scope restores the default") {
  const auto before = Real::default_precision();
  {
    PrecisionScope s(512);
    CHECK(Real::default_precision() >= 150);
  }
  CHECK(Real::default_precision() == before);
}
