#include "orbicrystal/toda.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace orbicrystal;

namespace {

bool equal_on_valid(const BandQ& x, const BandQ& y, long* compared = nullptr) {
  long c = 0;
  for (int n = x.lo(); n <= x.hi(); ++n)
    for (int m = x.lo(); m <= x.hi(); ++m) {
      if (!x.valid(n, m) || !y.valid(n, m)) continue;
      ++c;
      if (x.at(n, m) != y.at(n, m)) return false;
    }
  if (compared) *compared = c;
  return c > 0;
}

Context matrix_context(int a, int b) {
  Context ctx = Context::make(a, b, Rational(1, 3));
  ctx.p.clear();
  ctx.r.clear();
  for (int i = 1; i <= a; ++i) ctx.p.push_back(Rational(2 * i + 1, i + 3));
  for (int j = 1; j <= b; ++j) ctx.r.push_back(Rational(j + 4, 2 * j + 1));
  ctx.Q0 = Rational(3, 7);
  return ctx;
}

}  // namespace

TEST_CASE("Lambda and Delta") {
  const BandQ L = lambda_power(-6, 6, 1), D = delta_matrix(-6, 6);
  const BandQ c = L * D - D * L;
  CHECK(equal_on_valid(c, L));
  CHECK(L.at(2, 3) == 1);
  CHECK(L.at(3, 2) == 0);
  // Lambda Lambda^{-1} = 1 except where the window cuts the sum
  const BandQ id = L * lambda_power(-6, 6, -1);
  CHECK(id.at(0, 0) == 1);
  CHECK_FALSE(id.valid(6, 6));
}

TEST_CASE("validity shrinks under products with unbounded support") {
  Context ctx = Context::make(1, 1, Rational(1, 2));
  const BandQ gm = gamma_matrix(ctx, -5, 5, GammaSign::Minus, false, Rational(1));
  const BandQ gp = gamma_matrix(ctx, -5, 5, GammaSign::Plus, false, Rational(1));
  // lower times lower stays exact; lower times upper needs the whole line
  const BandQ ll = gm * gm;
  CHECK(ll.valid_interior().has_value());
  const BandQ lu = gm * gp;
  CHECK_FALSE(lu.valid(0, 0));
}

TEST_CASE("Toeplitz coefficients") {
  Context ctx = Context::make(1, 1, Rational(1, 2));  // q = 1/4
  const Rational q = ctx.q(), qh = qpow(ctx, 1, 2);
  const Rational x(3, 5);
  const auto h = gamma_toeplitz(ctx, GammaSign::Minus, false, x, 4);
  CHECK(h[0] == 1);
  CHECK(h[1] == x * qh / (1 - q));
  const auto e = gamma_toeplitz(ctx, GammaSign::Minus, true, x, 4);
  CHECK(e[1] == x * qh / (1 - q));
  CHECK(e[2] == x * x * q * q / ((1 - q) * (1 - q * q)));
  const auto hi = gamma_toeplitz(ctx, GammaSign::Minus, false, x, 4, true);
  CHECK(hi[1] == -x * qh / (1 - q));
  CHECK(gamma_toeplitz(ctx, GammaSign::Plus, false, x, 0).empty());
  // the series and its inverse multiply to 1
  const auto inv = gamma_toeplitz(ctx, GammaSign::Minus, false, x, 8, true);
  const auto ser = gamma_toeplitz(ctx, GammaSign::Minus, false, x, 8);
  for (int n = 1; n < 8; ++n) {
    Rational s = 0;
    for (int j = 0; j <= n; ++j) s += ser[static_cast<std::size_t>(j)] * inv[static_cast<std::size_t>(n - j)];
    CHECK(s == 0);
  }
}

TEST_CASE("Toeplitz coefficients against a long partial product") {
  Context ctx = Context::make(1, 1, Rational(1, 2));
  PrecisionScope scope(256);
  const Rational x(-2, 3);
  const Real qr = to_real(ctx.q()), xr = to_real(x);
  // prod_{i<=N} (1 + x q^{i-1/2} z), coefficients up to z^4
  std::vector<Real> poly(5, Real(0));
  poly[0] = 1;
  Real qi = sqrt(qr);
  for (int i = 1; i <= 150; ++i) {
    const Real c = xr * qi;
    for (int d = 4; d >= 1; --d) poly[static_cast<std::size_t>(d)] += c * poly[static_cast<std::size_t>(d - 1)];
    qi *= qr;
  }
  const auto e = gamma_toeplitz(ctx, GammaSign::Plus, true, x, 5);
  for (int d = 0; d <= 4; ++d) CHECK(abs(to_real(e[static_cast<std::size_t>(d)]) - poly[static_cast<std::size_t>(d)]) < Real("1e-60"));
}

TEST_CASE("framing conjugation") {
  Context ctx = Context::make(1, 1, Rational(1, 2));
  const BandQ X = framing_conjugate(ctx, lambda_power(-6, 6, 1), 2, -1);
  for (int n = -6; n < 6; ++n) CHECK(X.at(n, n + 1) == qpow(ctx, 2L * n + 1, 2));
  const BandQ I = framing_conjugate(ctx, BandQ::identity(-6, 6), 2, 1);
  CHECK(equal_on_valid(I, BandQ::identity(-6, 6)));

  Context c2 = Context::make(1, 2, Rational(1, 2));
  const Rational w(5, 3);
  const BandQ lhs = monomial_power(-6, 6, w) * framing_conjugate(c2, lambda_power(-6, 6, -2), 4, 1) *
                    monomial_power(-6, 6, 1 / w);
  const BandQ rhs = ipow(w, 2) * qpow(c2, -1) * (q_delta(c2, -6, 6, 1) * lambda_power(-6, 6, -2));
  CHECK(equal_on_valid(lhs, rhs));
}

TEST_CASE("Gamma conjugation lemmas") {
  Context ctx = Context::make(2, 1, Rational(1, 3));
  auto rep = gamma_conjugation_lemmas(ctx, Rational(0), Rational(0), Rational(1));
  CHECK_MESSAGE(rep.pass, rep.detail);
  rep = gamma_conjugation_lemmas(ctx, Rational(1), Rational(1), Rational(1), -8, 8, 12);
  CHECK_MESSAGE(rep.pass, rep.detail);
  rep = gamma_conjugation_lemmas(ctx, Rational(1, 2), Rational(-3), Rational(7, 2));
  CHECK_MESSAGE(rep.pass, rep.detail);
  CHECK_THROWS_AS(gamma_conjugation_lemmas(ctx, Rational(1), Rational(1), Rational(0)), ConfigError);
}

TEST_CASE("Kahler constants") {
  Context ctx = matrix_context(3, 3);
  const auto Q = kahler_constants(ctx);
  REQUIRE(Q.size() == 6);
  CHECK(Q[0] == 1);
  CHECK(Q[1] == ctx.P(1));
  CHECK(Q[2] == ctx.P(1) * ctx.P(2));
  CHECK(Q[3] == ctx.P(1) * ctx.P(2) * ctx.Q0);
  CHECK(Q[4] == Q[3] * ctx.R(2));
  CHECK(Q[5] == Q[3] * ctx.R(2) * ctx.R(1));
  CHECK(total_monomial(ctx) == Q[5]);
}

TEST_CASE("initial dressing") {
  Context ctx = matrix_context(1, 1);
  ctx.window_lo = -8;
  ctx.window_hi = 8;
  const auto d = initial_dressing(ctx, ModelKind::First);
  for (int n = -8; n <= 8; ++n) {
    CHECK(d.W.at(n, n) == 1);
    CHECK_FALSE(is_zero(d.Wbar.at(n, n)));
  }
  CHECK(d.W.max_offset() == 0);
  CHECK(d.Wbar.min_offset() == 0);
  // a = b = 1: W = q^{D^2/2} Gamma_-(q^-rho)^{-1} Gamma_-(Q0 q^-rho)^{-1} q^{-D^2/2}
  const BandQ expect = framing_conjugate(
      ctx,
      gamma_matrix(ctx, -8, 8, GammaSign::Minus, false, Rational(1), true) *
          gamma_matrix(ctx, -8, 8, GammaSign::Minus, false, ctx.Q0, true),
      2, 1);
  CHECK(equal_on_valid(d.W, expect));
  const auto d2 = initial_dressing(ctx, ModelKind::Second);
  const BandQ expect2 = framing_conjugate(
      ctx,
      gamma_matrix(ctx, -8, 8, GammaSign::Minus, false, Rational(1), true) *
          gamma_matrix(ctx, -8, 8, GammaSign::Minus, true, ctx.Q0, true),
      2, 1);
  CHECK(equal_on_valid(d2.W, expect2));
}

TEST_CASE("dressing consistency") {
  Context ctx = matrix_context(2, 1);
  const auto d = initial_dressing(ctx, ModelKind::First);
  const BandQ Winv = d.W.triangular_inverse();
  const int lo = ctx.window_lo, hi = ctx.window_hi;
  const BandQ L = d.W * lambda_power(lo, hi, 1) * Winv;
  const BandQ La = d.W * lambda_power(lo, hi, 2) * Winv;
  long compared = 0;
  CHECK(equal_on_valid(L * L, La, &compared));
  CHECK(compared > 100);
  CHECK(equal_on_valid(d.W * Winv, BandQ::identity(lo, hi)));
}

TEST_CASE("Lax powers") {
  Context ctx = matrix_context(2, 1);
  const auto L = lax_init(ctx, ModelKind::First);
  const auto in = L.La.valid_interior();
  REQUIRE(in.has_value());
  for (int n = in->first; n + 2 <= in->second; ++n) CHECK(L.La.at(n, n + 2) == 1);
  CHECK(equal_on_valid(L.La, lax_closed_form(ctx, ModelKind::First)));
  Context trivial = Context::make(1, 1, Rational(1, 2));
  const auto T = lax_init(trivial, ModelKind::First);
  CHECK(T.La.at(0, 1) == 1);
  Context tiny = matrix_context(2, 1);
  tiny.window_lo = 0;
  tiny.window_hi = 1;
  CHECK_THROWS_AS(lax_init(tiny, ModelKind::First), PreconditionError);
}

TEST_CASE("reduced factors") {
  Context ctx = Context::make(1, 1, Rational(1, 2));
  ctx.Q0 = Rational(5, 2);
  // D = Q0 * (-1/1) * (-1/Q0)
  CHECK(reduced_factors(ctx, ModelKind::First).D == 1);
  // D' = Q0 * (-1) / Q0
  CHECK(reduced_factors(ctx, ModelKind::Second).D == -1);
  Context c = matrix_context(2, 3);
  const auto f = reduced_factors(c, ModelKind::First);
  for (int n = c.window_lo; n + 2 <= c.window_hi; ++n) CHECK(f.B.at(n, n + 2) == 1);
  for (int n = c.window_lo; n <= c.window_hi; ++n) CHECK(f.C.at(n, n) == 1);
  CHECK(f.B.max_offset() == 2);
  CHECK(f.C.min_offset() == -3);
}

TEST_CASE("Theorem 3 factorizations") {
  Context trivial = Context::make(1, 1, Rational(1, 2));
  trivial.window_lo = -10;
  trivial.window_hi = 10;
  auto rep = factorization_check(trivial, ModelKind::First);
  CHECK_MESSAGE(rep.pass, rep.detail);
  for (auto [a, b] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 2}}) {
    Context ctx = matrix_context(a, b);
    for (auto m : {ModelKind::First, ModelKind::Second}) {
      rep = factorization_check(ctx, m);
      CHECK_MESSAGE(rep.pass, rep.detail);
    }
  }
  // Ablowitz-Ladik shape: B' and C' each have one off-diagonal
  const auto f = reduced_factors(matrix_context(1, 1), ModelKind::Second);
  CHECK(f.B.max_offset() == 1);
  CHECK(f.C.min_offset() == -1);
}

TEST_CASE("a wrong constant is detected") {
  Context ctx = matrix_context(2, 1);
  const auto L = lax_init(ctx, ModelKind::First);
  auto f = reduced_factors(ctx, ModelKind::First);
  CHECK(equal_on_valid(f.D * L.La, L.Lbar_mb));
  CHECK_FALSE(equal_on_valid(-f.D * L.La, L.Lbar_mb));
}

TEST_CASE("tangency") {
  for (auto m : {ModelKind::First, ModelKind::Second}) {
    auto rep = tangency_check(matrix_context(1, 1), m, 1);
    CHECK_MESSAGE(rep.pass, rep.detail);
    rep = tangency_check(matrix_context(2, 1), m, 2);
    CHECK_MESSAGE(rep.pass, rep.detail);
  }
  CHECK_THROWS_AS(tangency_check(matrix_context(2, 1), ModelKind::First, 1), ConfigError);
}

TEST_CASE("U factorization") {
  Context ctx = matrix_context(2, 1);
  ctx.window_lo = -6;
  ctx.window_hi = 6;
  PrecisionScope scope(256);
  const BandR u40 = build_U(ctx, ModelKind::First, 40);
  const BandR u80 = build_U(ctx, ModelKind::First, 80);
  CHECK(abs(u40.at(0, 0) - u80.at(0, 0)) < Real("1e-30") * abs(u80.at(0, 0)));
  CHECK_FALSE(u80.exact());
  for (auto m : {ModelKind::First, ModelKind::Second}) {
    const auto rep = ufactor_check(ctx, m, {20, 40});
    CHECK_MESSAGE(rep.pass, rep.detail);
  }
  Context far = ctx;
  far.u = Rational(3, 2);
  CHECK_THROWS_AS(build_U(far, ModelKind::First, 10), PreconditionError);
}

TEST_CASE("band matrix JSON") {
  const BandQ L = lambda_power(-2, 2, 1);
  const auto j = nlohmann::json::parse(band_json(L));
  CHECK(j["ring"] == "exact");
  CHECK(j["window"][0] == -2);
  REQUIRE(j["diagonals"].size() == 1);
  CHECK(j["diagonals"][0]["offset"] == 1);
  CHECK(j["diagonals"][0]["entries"].size() == 4);
}
