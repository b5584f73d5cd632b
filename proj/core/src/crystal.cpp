#include "orbicrystal/crystal.hpp"

namespace orbicrystal {

std::string model_name(ModelKind m) { return m == ModelKind::First ? "first" : "second"; }

ModelKind parse_model(const std::string& name) {
  if (name == "first") return ModelKind::First;
  if (name == "second") return ModelKind::Second;
  throw ConfigError("unknown model '" + name + "' (expected first or second)");
}

Specialization p_specialization(const Context& ctx) {
  std::vector<Rational> x;
  for (int i = 1; i <= ctx.a; ++i) x.push_back(ctx.p_at(i));
  return Specialization::principal(ctx, x);
}

Specialization r_specialization(const Context& ctx) {
  std::vector<Rational> x;
  for (int j = 1; j <= ctx.b; ++j) x.push_back(ctx.r_at(j));
  return Specialization::principal(ctx, x);
}

JetQ zero_jet(const Context& ctx) { return JetQ(ctx.jet_symbols, ctx.jet_order); }
JetQ unit_jet(const Context& ctx) { return JetQ::constant(ctx.jet_symbols, ctx.jet_order, Rational(1)); }

ZSeries z_series(const Context& ctx, ModelKind model, int s) {
  ctx.validate();
  const int offset = s * (s + 1) / 2;
  ZSeries out{QSeries<JetQ>(ctx.q_degree, zero_jet(ctx), offset), s, model};
  SchurEvaluator pe(ctx, p_specialization(ctx));
  SchurEvaluator re(ctx, r_specialization(ctx));
  const int K = ctx.jet_symbols;
  for (const auto& lambda : enumerate(ctx.q_degree)) {
    const Rational sp = pe.schur(lambda);
    const Rational sr = model == ModelKind::First ? re.schur(lambda) : re.schur(conjugate(lambda));
    const Rational w = sp * sr;
    if (sgn(w) == 0) continue;
    JetQ exponent = zero_jet(ctx);
    for (int k = 1; k <= K; ++k) {
      exponent += JetQ::t(K, ctx.jet_order, k, phi(ctx, k, lambda, s));
      if (model == ModelKind::Second) exponent += JetQ::tbar(K, ctx.jet_order, k, phi(ctx, -k, lambda, s));
    }
    JetQ weight = K > 0 ? jet_exp(exponent) : unit_jet(ctx);
    weight *= w;
    out.series[lambda.weight()] += weight;
  }
  return out;
}

QSeries<Rational> product_series(const Context& ctx, ModelKind model) {
  ctx.validate();
  const Specialization A = p_specialization(ctx);
  const Specialization B = r_specialization(ctx);
  QSeries<Rational> expo(ctx.q_degree, Rational(0));
  for (int k = 1; k <= ctx.q_degree; ++k) {
    Rational c = powersum(ctx, k, A) * powersum(ctx, k, B) / k;
    if (model == ModelKind::Second && k % 2 == 0) c = -c;
    expo[k] = c;
  }
  return series_exp(expo);
}

CheckReport product_form_check(const Context& ctx, ModelKind model) {
  Context plain = ctx;
  plain.jet_symbols = 0;
  CheckReport rep;
  rep.check = "cauchy";
  rep.param("model", model_name(model));
  rep.param("a", ctx.a);
  rep.param("b", ctx.b);
  rep.param("u", to_string(ctx.u));
  rep.param("q_degree", ctx.q_degree);
  const ZSeries z = z_series(plain, model, 0);
  const QSeries<Rational> prod = product_series(plain, model);
  Rational worst = 0;
  for (int m = 0; m <= ctx.q_degree; ++m) {
    const Rational lhs = z.series[m].constant_term();
    const Rational d = abs(lhs - prod[m]);
    if (d > worst) worst = d;
    if (!is_zero(d))
      rep.fail("Q^" + std::to_string(m) + ": sum over partitions " + to_string(lhs) + " vs product " +
               to_string(prod[m]));
  }
  rep.max_residual = to_string(worst);
  return rep;
}

MacMahonValue macmahon(const Context& ctx, const Rational& x) {
  ctx.require_convergent("macmahon");
  const Rational q = ctx.q();
  if (abs(x * q) >= 1) throw PreconditionError("macmahon: needs |x q| < 1");
  PrecisionScope scope(ctx.precision_bits);
  MacMahonValue out;
  out.factors = ctx.tail_cutoff;
  Real value = 1;
  const Real xr = to_real(x);
  const Real qr = to_real(q);
  Real qn = 1;
  for (int n = 1; n <= ctx.tail_cutoff; ++n) {
    qn *= qr;
    Real factor = 1 - xr * qn;
    value *= pow(factor, -n);
  }
  out.value = value;
  // sum_{n>T} n r^n / (1 - r^{T+1}) with r = |q|, scaled by |x|
  const Real r = abs(qr);
  const int T = ctx.tail_cutoff;
  const Real rT1 = pow(r, T + 1);
  const Real geometric = rT1 * ((T + 1) - T * r) / ((1 - r) * (1 - r));
  out.tail_bound = abs(xr) * geometric / (1 - abs(xr) * rT1);
  return out;
}

std::pair<std::vector<Rational>, std::vector<Rational>> two_q_preset(int a, int b, const Context& ctx) {
  std::vector<Rational> p, r;
  for (int i = 1; i <= a; ++i) p.push_back(qpow(ctx, 2L * i - 1 - a, 2L * a));
  for (int j = 1; j <= b; ++j) r.push_back(qpow(ctx, 2L * j - 1 - b, 2L * b));
  return {p, r};
}

JetQ prefactor_ratio(const Context& ctx, ModelKind model, int s) {
  (void)s;
  const int K = ctx.jet_symbols;
  JetQ exponent = zero_jet(ctx);
  for (int k = 1; k <= K; ++k) {
    const Rational qk = qpow(ctx, k);
    exponent += JetQ::t(K, ctx.jet_order, k, qk / (1 - qk));
    if (model == ModelKind::Second) exponent += JetQ::tbar(K, ctx.jet_order, k, Rational(-1) / (1 - qk));
  }
  return K > 0 ? jet_exp(exponent) : unit_jet(ctx);
}

}  // namespace orbicrystal
