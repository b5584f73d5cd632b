#include "orbicrystal/crystal.hpp"

#include <doctest.h>

using namespace orbicrystal;

namespace {

// log M(x,q) = sum_m x^m q^m / (m (1-q^m)^2)
Real log_macmahon(const Rational& x, const Rational& q, int terms) {
  const Real xr = to_real(x), qr = to_real(q);
  Real s = 0, xm = 1, qm = 1;
  for (int m = 1; m <= terms; ++m) {
    xm *= xr;
    qm *= qr;
    s += xm * qm / (m * (1 - qm) * (1 - qm));
  }
  return s;
}

// s_lambda(q^{-rho/c}) with t = q^{1/c}: t^{|l|/2 + n(l)} / prod (1 - t^h), computed through the uniformizer
Rational fractional_principal(const Context& ctx, const Partition& l, int c) {
  const Partition conj = conjugate(l);
  long n = 0;
  for (int i = 1; i <= l.length(); ++i) n += static_cast<long>(i - 1) * l.part(i);
  Rational v = qpow(ctx, l.weight() + 2 * n, 2L * c);
  for (int i = 1; i <= l.length(); ++i)
    for (int j = 1; j <= l.part(i); ++j) v /= Rational(1) - qpow(ctx, l.part(i) - j + conj.part(j) - i + 1, c);
  return v;
}

}  // namespace

TEST_CASE("z_series small example") {
  Context ctx = Context::make(1, 1, Rational(1, 2));
  ctx.q_degree = 3;
  ctx.jet_symbols = 0;
  const auto z = z_series(ctx, ModelKind::First, 0);
  CHECK(z.series[0].constant_term() == 1);
  CHECK(z.series[1].constant_term() == Rational(4, 9));
  const auto z2 = z_series(ctx, ModelKind::Second, 0);
  CHECK(z2.series[1].constant_term() == Rational(4, 9));
  ctx.q_degree = 0;
  CHECK(z_series(ctx, ModelKind::First, 0).series.degree() == 0);
}

TEST_CASE("charge shifts the Q offset") {
  Context ctx = Context::make(1, 1, Rational(1, 2));
  ctx.q_degree = 2;
  CHECK(z_series(ctx, ModelKind::First, 2).series.offset() == 3);
  CHECK(z_series(ctx, ModelKind::First, -1).series.offset() == 0);
}

TEST_CASE("product form holds for both models") {
  for (auto [a, b] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 2}}) {
    Context ctx = Context::make(a, b, Rational(1, 3));
    ctx.q_degree = 5;
    ctx.p.clear();
    ctx.r.clear();
    for (int i = 1; i <= a; ++i) ctx.p.push_back(Rational(i + 1, 2));
    for (int j = 1; j <= b; ++j) ctx.r.push_back(Rational(2, j + 2));
    for (auto m : {ModelKind::First, ModelKind::Second}) {
      const auto rep = product_form_check(ctx, m);
      CHECK_MESSAGE(rep.pass, rep.detail);
    }
  }
}

TEST_CASE("MacMahon against the log series") {
  Context ctx = Context::make(1, 1, Rational(1, 2));  // q = 1/4
  ctx.precision_bits = 256;
  PrecisionScope scope(256);
  const Rational x(1, 2);
  const Real exact_log = log_macmahon(x, ctx.q(), 400);
  ctx.tail_cutoff = 60;
  const auto m60 = macmahon(ctx, x);
  ctx.tail_cutoff = 120;
  const auto m120 = macmahon(ctx, x);
  PrecisionScope scope2(256);
  CHECK(abs(log(m120.value) - exact_log) < Real("1e-40"));
  CHECK(abs(m120.value - m60.value) / m120.value < Real("1e-35"));
  CHECK(abs(log(m60.value) - exact_log) <= m60.tail_bound);
  CHECK(abs(log(m120.value) - exact_log) <= m120.tail_bound + Real("1e-70"));
}

TEST_CASE("MacMahon requires convergence") {
  Context ctx = Context::make(1, 1, Rational(3, 2));
  CHECK_THROWS_AS(macmahon(ctx, Rational(1)), PreconditionError);
}

TEST_CASE("two-q preset reproduces the fractional principal specializations") {
  for (auto [a, b] : {std::pair{2, 1}, std::pair{2, 3}}) {
    Context ctx = Context::make(a, b, Rational(1, 2));
    ctx.q_degree = 4;
    ctx.jet_symbols = 0;
    const auto [p, r] = two_q_preset(a, b, ctx);
    ctx.p = p;
    ctx.r = r;
    const auto z = z_series(ctx, ModelKind::First, 0);
    for (int m = 0; m <= ctx.q_degree; ++m) {
      Rational expect = 0;
      for (const auto& l : partitions_of(m)) expect += fractional_principal(ctx, l, a) * fractional_principal(ctx, l, b);
      CHECK(z.series[m].constant_term() == expect);
    }
  }
}

TEST_CASE("prefactor ratio at first order") {
  Context ctx = Context::make(1, 1, Rational(1, 2));
  ctx.jet_symbols = 2;
  ctx.jet_order = 1;
  const auto f = prefactor_ratio(ctx, ModelKind::Second, 0);
  const Rational q = ctx.q();
  CHECK(f.constant_term() == 1);
  CHECK(f.coeff(JetQ::t(2, 1, 1).terms().begin()->first) == q / (1 - q));
  CHECK(f.coeff(JetQ::tbar(2, 1, 2).terms().begin()->first) == Rational(-1) / (1 - q * q));
}
