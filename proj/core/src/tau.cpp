#include "orbicrystal/tau.hpp"

#include <algorithm>
#include <sstream>

namespace orbicrystal {

std::string GPipeline::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& f : factors) {
    if (!first) os << ' ';
    first = false;
    switch (f.kind) {
      case GFactor::Kind::Framing:
        os << "q^{" << (f.framing_sign < 0 ? "-" : "") << "W0/" << f.framing_den << "}";
        break;
      case GFactor::Kind::GammaMinus:
        os << (f.primed ? "G'-" : "G-");
        break;
      case GFactor::Kind::GammaPlus:
        os << (f.primed ? "G'+" : "G+");
        break;
      case GFactor::Kind::Weight:
        os << "(" << to_string(f.weight) << ")^L0";
        break;
      case GFactor::Kind::QGrading:
        os << "Q^L0";
        break;
    }
  }
  return os.str();
}

GPipeline build_g(const Context& ctx, ModelKind model, bool with_gammas) {
  GPipeline g;
  g.model = model;
  auto framing = [](int sign, long den) {
    GFactor f;
    f.kind = GFactor::Kind::Framing;
    f.framing_sign = sign;
    f.framing_den = den;
    return f;
  };
  auto pair = [&](bool primed) {
    if (!with_gammas) return;
    GFactor m;
    m.kind = GFactor::Kind::GammaMinus;
    m.primed = primed;
    GFactor p;
    p.kind = GFactor::Kind::GammaPlus;
    p.primed = primed;
    g.factors.push_back(m);
    g.factors.push_back(p);
  };
  auto weight = [&](const Rational& x) {
    GFactor f;
    f.kind = GFactor::Kind::Weight;
    f.weight = x;
    g.factors.push_back(f);
  };
  const bool primed_right = model == ModelKind::Second;
  g.factors.push_back(framing(1, 2L * ctx.a));
  for (int i = 1; i <= ctx.a - 1; ++i) {
    pair(false);
    weight(ctx.P(i));
  }
  pair(false);
  g.factors.push_back(GFactor{});
  for (int j = ctx.b - 1; j >= 1; --j) {
    pair(primed_right);
    weight(ctx.R(j));
  }
  pair(primed_right);
  g.factors.push_back(framing(model == ModelKind::First ? 1 : -1, 2L * ctx.b));
  return g;
}

namespace {

long casimir_eigenvalue(const Partition& lam, int s) {
  return kappa(lam) + (2L * s + 1) * lam.weight() + static_cast<long>(s) * (s + 1) * (2 * s + 1) / 6;
}

std::vector<Real> to_reals(const std::vector<Rational>& x) {
  std::vector<Real> out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(to_real(v));
  return out;
}

Monomial bump(Monomial m, int symbol) {
  m.at(static_cast<std::size_t>(symbol)) = static_cast<std::uint8_t>(m[static_cast<std::size_t>(symbol)] + 1);
  return m;
}

Real max_abs_diff(const QSeries<Jet<Real>>& x, const QSeries<Jet<Real>>& y) {
  Real worst = 0;
  const int d = std::min(x.degree(), y.degree());
  for (int m = 0; m <= d; ++m) {
    const Jet<Real> diff = x[m] - y[m];
    for (const auto& [mon, c] : diff.terms()) worst = std::max(worst, Real(abs(c)));
  }
  return worst;
}

Real tolerance_value(double tolerance, unsigned bits) {
  if (tolerance > 0) return Real(tolerance);
  return pow(Real(10), -static_cast<long>(bits / 8));
}

}  // namespace

TauEngine::TauEngine(const Context& ctx, GPipeline g, int s, int cutoff)
    : ctx_(ctx), g_(std::move(g)), s_(s), cutoff_(cutoff) {
  ctx_.require_convergent("tau pipeline");
  basis_ = make_basis(s, cutoff);
  tables_ = std::make_shared<CurrentTables>(basis_, cutoff);
  const Specialization rho = Specialization::principal(ctx_, {Rational(1)});
  gamma_plain_ = to_reals(gamma_current_coefficients(ctx_, false, rho, cutoff, false));
  gamma_primed_ = to_reals(gamma_current_coefficients(ctx_, true, rho, cutoff, false));
  casimir_.resize(basis_->size());
  for (std::size_t i = 0; i < basis_->size(); ++i) casimir_[i] = casimir_eigenvalue(basis_->state(i), s);
}

JetVector<Real> TauEngine::unit(std::size_t index) const {
  JetVector<Real> v;
  auto& data = v[Monomial(static_cast<std::size_t>(2 * ctx_.jet_symbols), 0)];
  data.assign(basis_->size(), Real(0));
  data[index] = 1;
  return v;
}

JetVector<Real> TauEngine::apply_current(const JetVector<Real>& v, int n, bool bra) const {
  JetVector<Real> out;
  const Real one(1);
  for (const auto& [mon, vec] : v) {
    auto& dst = out[mon];
    dst.assign(vec.size(), Real(0));
    add_current(*tables_, n, one, vec, dst, bra);
  }
  return out;
}

JetVector<Real> TauEngine::insert(JetVector<Real> v, const std::vector<CurrentInsertion>& terms, bool bra) const {
  JetVector<Real> result = v;
  JetVector<Real> term = std::move(v);
  for (int j = 1; j <= ctx_.jet_order; ++j) {
    JetVector<Real> next;
    for (const auto& [mon, vec] : term) {
      for (const auto& ins : terms) {
        Monomial m = bump(mon, ins.symbol);
        if (total_degree(m) > ctx_.jet_order) continue;
        auto& dst = next[m];
        if (dst.empty()) dst.assign(vec.size(), Real(0));
        add_current(*tables_, ins.mode, Real(to_real(ins.coeff) / j), vec, dst, bra);
      }
    }
    for (const auto& [mon, vec] : next) {
      auto& dst = result[mon];
      if (dst.empty()) dst.assign(vec.size(), Real(0));
      for (std::size_t i = 0; i < vec.size(); ++i) dst[i] += vec[i];
    }
    term = std::move(next);
  }
  return result;
}

void TauEngine::apply_factor(const GFactor& f, JetVector<Real>& v, bool bra, int keep) const {
  const int N = s_ * (s_ + 1) / 2;
  for (auto& [mon, vec] : v) {
    switch (f.kind) {
      case GFactor::Kind::Framing: {
        for (std::size_t i = 0; i < vec.size(); ++i) {
          if (detail::fast_zero(vec[i])) continue;
          vec[i] *= to_real(qpow(ctx_, f.framing_sign * casimir_[i], f.framing_den));
        }
        break;
      }
      case GFactor::Kind::Weight: {
        std::vector<Real> powers;
        for (int w = 0; w <= cutoff_; ++w) powers.push_back(to_real(ipow(f.weight, w + N)));
        for (std::size_t i = 0; i < vec.size(); ++i)
          if (!detail::fast_zero(vec[i])) vec[i] *= powers[static_cast<std::size_t>(basis_->weight(i))];
        break;
      }
      case GFactor::Kind::GammaMinus:
      case GFactor::Kind::GammaPlus: {
        const auto sign = f.kind == GFactor::Kind::GammaMinus ? GammaSign::Minus : GammaSign::Plus;
        apply_gamma_currents(*tables_, sign, f.primed ? gamma_primed_ : gamma_plain_, vec, bra);
        break;
      }
      case GFactor::Kind::QGrading:
        break;
    }
    for (std::size_t i = basis_->weight_begin(keep + 1); i < vec.size(); ++i) vec[i] = 0;
  }
}

JetVector<Real> TauEngine::left(JetVector<Real> bra) const {
  const auto& fs = g_.factors;
  for (std::size_t i = 0; i < fs.size() && fs[i].kind != GFactor::Kind::QGrading; ++i) {
    // a later bra-lowering factor still needs the high weights
    bool lowering_ahead = false;
    for (std::size_t j = i + 1; j < fs.size() && fs[j].kind != GFactor::Kind::QGrading; ++j)
      if (fs[j].kind == GFactor::Kind::GammaMinus) lowering_ahead = true;
    apply_factor(fs[i], bra, true, lowering_ahead ? cutoff_ : std::min(cutoff_, ctx_.q_degree));
  }
  return bra;
}

JetVector<Real> TauEngine::right(JetVector<Real> ket) const {
  const auto& fs = g_.factors;
  for (std::size_t i = fs.size(); i-- > 0 && fs[i].kind != GFactor::Kind::QGrading;) {
    bool lowering_ahead = false;
    for (std::size_t j = i; j-- > 0 && fs[j].kind != GFactor::Kind::QGrading;)
      if (fs[j].kind == GFactor::Kind::GammaPlus) lowering_ahead = true;
    apply_factor(fs[i], ket, false, lowering_ahead ? cutoff_ : std::min(cutoff_, ctx_.q_degree));
  }
  return ket;
}

QSeries<Jet<Real>> TauEngine::pair(const JetVector<Real>& bra, const JetVector<Real>& ket) const {
  const int N = s_ * (s_ + 1) / 2;
  const int K = ctx_.jet_symbols;
  QSeries<Jet<Real>> out(ctx_.q_degree, Jet<Real>(K, ctx_.jet_order), N);
  const int top = std::min(ctx_.q_degree, cutoff_);
  for (const auto& [mb, vb] : bra) {
    for (const auto& [mk, vk] : ket) {
      Monomial m = mb;
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint8_t>(m[i] + mk[i]);
      if (total_degree(m) > ctx_.jet_order) continue;
      for (int w = 0; w <= top; ++w) {
        Real acc = 0;
        for (std::size_t i = basis_->weight_begin(w); i < basis_->weight_end(w); ++i) acc += vb[i] * vk[i];
        out[w].add_term(m, acc);
      }
    }
  }
  return out;
}

Rational t_coefficient(const Context& ctx, int k) {
  Rational c = (ctx.a * k) % 2 ? Rational(-1) : Rational(1);
  for (int i = 1; i <= ctx.a - 1; ++i) c *= ipow(ctx.P(i), -static_cast<long>(ctx.a - i) * k);
  return c;
}

Rational tbar_coefficient(const Context& ctx, int k, bool with_sign) {
  Rational c = (with_sign && (ctx.b * k) % 2) ? Rational(-1) : Rational(1);
  for (int j = 1; j <= ctx.b - 1; ++j) c *= ipow(ctx.R(j), -static_cast<long>(ctx.b - j) * k);
  return c;
}

bool approx_pass(const std::vector<Real>& residuals, const Real& tolerance, unsigned precision_bits,
                 std::string& why) {
  if (residuals.empty()) {
    why = "no cutoffs";
    return false;
  }
  const Real& last = residuals.back();
  if (!(last < tolerance)) {
    why = "residual " + to_string(last, 6) + " not below tolerance " + to_string(tolerance, 3);
    return false;
  }
  if (residuals.size() >= 2) {
    const Real& prev = residuals[residuals.size() - 2];
    // once the previous cutoff is already at rounding level there is nothing left to decay
    const Real floor = pow(Real(2), -static_cast<long>(precision_bits) + 32);
    if (!(last * 10 <= prev) && !(prev < floor)) {
      why = "residual did not decay 10x: " + to_string(prev, 6) + " -> " + to_string(last, 6);
      return false;
    }
  }
  return true;
}

CheckReport theorem_check(const Context& ctx, int which, int s, const std::vector<int>& cutoffs, double tolerance) {
  if (which != 1 && which != 2) throw ConfigError("theorem must be 1 or 2");
  ctx.validate();
  ctx.require_convergent("theorem_check");
  PrecisionScope scope(ctx.precision_bits);
  const ModelKind model = which == 1 ? ModelKind::First : ModelKind::Second;
  const Context nctx = ctx.normalized();
  const int K = ctx.jet_symbols;

  CheckReport rep;
  rep.check = which == 1 ? "theorem1" : "theorem2";
  rep.exact = false;
  rep.param("a", ctx.a);
  rep.param("b", ctx.b);
  rep.param("u", to_string(ctx.u));
  rep.param("s", s);
  rep.param("q_degree", ctx.q_degree);
  rep.param("jet_symbols", K);
  rep.param("jet_order", ctx.jet_order);
  rep.param("precision_bits", static_cast<long>(ctx.precision_bits));

  // z(s,t)/z(s,0), exact then rounded
  const ZSeries z = z_series(nctx, model, s);
  const QSeries<Rational> z0 = z.series.map([](const JetQ& j) { return j.constant_term(); });
  const auto ratio_exact = series_mul(z.series, series_inv(z0));
  const auto lhs = ratio_exact.map([](const JetQ& j) { return j.map([](const Rational& x) { return to_real(x); }); });
  const Jet<Real> pref = prefactor_ratio(nctx, model, s).map([](const Rational& x) { return to_real(x); });

  std::vector<std::vector<CurrentInsertion>> bra_ways, ket_ways;
  std::vector<CurrentInsertion> tees, tbars;
  for (int k = 1; k <= K; ++k) tees.push_back({k - 1, nctx.a * k, t_coefficient(nctx, k)});
  if (which == 1) {
    for (int k = 1; k <= K; ++k) tbars.push_back({k - 1, -nctx.b * k, tbar_coefficient(nctx, k, true)});
    bra_ways = {tees, {}};
    ket_ways = {{}, tbars};
  } else {
    for (int k = 1; k <= K; ++k) tbars.push_back({K + k - 1, -nctx.b * k, tbar_coefficient(nctx, k, false)});
    bra_ways = {tees};
    ket_ways = {tbars};
  }

  const GPipeline g = build_g(nctx, model);
  rep.param("pipeline", g.describe());
  std::vector<Real> residuals;
  for (int D : cutoffs) {
    TauEngine engine(nctx, g, s, D);
    Real worst = 0;
    for (std::size_t w = 0; w < bra_ways.size(); ++w) {
      auto bra = engine.left(engine.insert(engine.unit(0), bra_ways[w], true));
      auto ket = engine.right(engine.insert(engine.unit(0), ket_ways[w], false));
      const auto tau = engine.pair(bra, ket);
      const QSeries<Real> tau0 = tau.map([](const Jet<Real>& j) { return j.constant_term(); });
      auto rhs = series_mul(tau, series_inv(tau0)).map([&](const Jet<Real>& j) { return j * pref; });
      worst = std::max(worst, max_abs_diff(lhs, rhs));
    }
    residuals.push_back(worst);
    rep.residuals_by_cutoff.emplace_back(D, to_string(worst, 6));
  }
  rep.max_residual = to_string(residuals.back(), 6);
  std::string why;
  if (!approx_pass(residuals, tolerance_value(tolerance, ctx.precision_bits), ctx.precision_bits, why))
    rep.fail(why);
  return rep;
}

CheckReport jg_gj_check(const Context& ctx, const std::vector<int>& ks, int s, int interior_weight,
                        const std::vector<int>& cutoffs, double tolerance) {
  ctx.validate();
  ctx.require_convergent("jg_gj_check");
  PrecisionScope scope(ctx.precision_bits);
  CheckReport rep;
  rep.check = "jg_gj";
  rep.exact = false;
  rep.param("a", ctx.a);
  rep.param("b", ctx.b);
  rep.param("u", to_string(ctx.u));
  rep.param("s", s);
  rep.param("interior_weight", interior_weight);
  rep.param("q_degree", ctx.q_degree);
  std::string klist;
  for (int k : ks) klist += (klist.empty() ? "" : ",") + std::to_string(k);
  rep.param("k", klist);

  const GPipeline g = build_g(ctx, ModelKind::First);
  std::vector<Real> residuals;
  for (int D : cutoffs) {
    if (interior_weight > D) throw PreconditionError("jg_gj_check: interior weight above cutoff");
    TauEngine engine(ctx, g, s, D);
    const std::size_t n_int = engine.basis()->weight_end(interior_weight);
    Real worst = 0;
    std::vector<JetVector<Real>> L(n_int), R(n_int);
    for (std::size_t i = 0; i < n_int; ++i) {
      L[i] = engine.left(engine.unit(i));
      R[i] = engine.right(engine.unit(i));
    }
    for (int k : ks) {
      const Real c1 = to_real(t_coefficient(ctx, k));
      const Real c2 = to_real(tbar_coefficient(ctx, k, true));
      std::vector<JetVector<Real>> RJ(n_int);
      for (std::size_t j = 0; j < n_int; ++j)
        RJ[j] = engine.right(engine.apply_current(engine.unit(j), -ctx.b * k, false));
      for (std::size_t i = 0; i < n_int; ++i) {
        const auto LJ = engine.left(engine.apply_current(engine.unit(i), ctx.a * k, true));
        for (std::size_t j = 0; j < n_int; ++j) {
          auto lhs = engine.pair(LJ, R[j]).map([&](const Jet<Real>& x) { return x * c1; });
          auto rhs = engine.pair(L[i], RJ[j]).map([&](const Jet<Real>& x) { return x * c2; });
          worst = std::max(worst, max_abs_diff(lhs, rhs));
        }
      }
    }
    residuals.push_back(worst);
    rep.residuals_by_cutoff.emplace_back(D, to_string(worst, 6));
  }
  rep.max_residual = to_string(residuals.back(), 6);
  std::string why;
  if (!approx_pass(residuals, tolerance_value(tolerance, ctx.precision_bits), ctx.precision_bits, why))
    rep.fail(why);
  return rep;
}

CheckReport fermionic_check(const Context& ctx, ModelKind model, int s) {
  ctx.validate();
  CheckReport rep;
  rep.check = "fermionic";
  rep.param("model", model_name(model));
  rep.param("a", ctx.a);
  rep.param("b", ctx.b);
  rep.param("s", s);
  rep.param("q_degree", ctx.q_degree);
  const int D = ctx.q_degree;
  const int N = s * (s + 1) / 2;
  auto basis = make_basis(s, D);
  CurrentTables tables(basis, D);
  const Specialization rho = Specialization::principal(ctx, {Rational(1)});
  const auto plain = gamma_current_coefficients(ctx, false, rho, D, false);
  const auto primed = gamma_current_coefficients(ctx, true, rho, D, false);
  auto weight = [&](std::vector<Rational>& v, const Rational& x) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= ipow(x, basis->weight(i) + N);
  };

  // every Gamma raises here, so truncating at q_degree is exact
  std::vector<Rational> bra(basis->size(), Rational(0)), ket(basis->size(), Rational(0));
  bra[0] = 1;
  ket[0] = 1;
  for (int i = 1; i <= ctx.a; ++i) {
    apply_gamma_currents(tables, GammaSign::Plus, plain, bra, true);
    if (i <= ctx.a - 1) weight(bra, ctx.P(i));
  }
  for (int j = 1; j <= ctx.b; ++j) {
    apply_gamma_currents(tables, GammaSign::Minus, model == ModelKind::First ? plain : primed, ket, false);
    if (j <= ctx.b - 1) weight(ket, ctx.R(j));
  }

  const int K = ctx.jet_symbols;
  QSeries<JetQ> fermion(D, zero_jet(ctx), N);
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const Rational w = bra[i] * ket[i];
    if (sgn(w) == 0) continue;
    const Partition& lam = basis->state(i);
    JetQ exponent = zero_jet(ctx);
    for (int k = 1; k <= K; ++k) {
      exponent += JetQ::t(K, ctx.jet_order, k, phi(ctx, k, lam, s));
      if (model == ModelKind::Second) exponent += JetQ::tbar(K, ctx.jet_order, k, phi(ctx, -k, lam, s));
    }
    JetQ e = K > 0 ? jet_exp(exponent) : unit_jet(ctx);
    fermion[lam.weight()] += e * w;
  }

  const ZSeries z = z_series(ctx, model, s);
  const Rational c = ctx.p_at(ctx.a) * ctx.r_at(ctx.b);
  const Rational front = ipow(ctx.p_at(1) / ctx.p_at(ctx.a) * (ctx.r_at(1) / ctx.r_at(ctx.b)), N);
  rep.param("constant", to_string(front));
  for (int w = 0; w <= D; ++w) {
    const JetQ expected = z.series[w] * Rational(front * ipow(c, -w));
    const JetQ diff = fermion[w] - expected;
    for (const auto& [mon, v] : diff.terms()) {
      if (sgn(v) != 0) {
        rep.fail("Q^" + std::to_string(w + N) + " " + monomial_name(mon) + ": fermionic " +
                 to_string(fermion[w].coeff(mon)) + " vs " + to_string(expected.coeff(mon)));
        rep.max_residual = to_string(Rational(abs(v)));
        return rep;
      }
    }
  }
  return rep;
}

CheckReport gamma_cr_check(const Context& ctx, bool primed, const Rational& x, const Rational& y, int power,
                           int interior_weight, const std::vector<int>& cutoffs, double tolerance) {
  ctx.validate();
  ctx.require_convergent("gamma_cr_check");
  PrecisionScope scope(ctx.precision_bits);
  CheckReport rep;
  rep.check = primed ? "gamma_cr_primed" : "gamma_cr";
  rep.exact = false;
  rep.param("x", to_string(x));
  rep.param("y", to_string(y));
  rep.param("u", to_string(ctx.u));
  rep.param("macmahon_power", power);
  rep.param("interior_weight", interior_weight);
  const MacMahonValue M = macmahon(ctx, x * y);
  rep.param("macmahon_tail_bound", to_string(M.tail_bound, 6));
  const Real Mp = power >= 0 ? pow(M.value, power) : 1 / pow(M.value, -power);

  // LHS = A B, RHS = M^power B A
  const Specialization sx = Specialization::principal(ctx, {x});
  const Specialization sy = Specialization::principal(ctx, {y});
  std::vector<Real> residuals;
  for (int D : cutoffs) {
    auto basis = make_basis(0, D);
    CurrentTables tables(basis, D);
    GammaSign sa, sb;
    std::vector<Real> ca, cb;
    if (!primed) {
      sa = GammaSign::Plus;
      ca = to_reals(gamma_current_coefficients(ctx, false, sx, D, false));
      sb = GammaSign::Minus;
      cb = to_reals(gamma_current_coefficients(ctx, false, sy, D, true));
    } else {
      sa = GammaSign::Minus;
      ca = to_reals(gamma_current_coefficients(ctx, true, sx, D, true));
      sb = GammaSign::Plus;
      cb = to_reals(gamma_current_coefficients(ctx, true, sy, D, false));
    }
    Real worst = 0;
    const std::size_t n_int = basis->weight_end(interior_weight);
    for (std::size_t j = 0; j < n_int; ++j) {
      std::vector<Real> ab(basis->size(), Real(0));
      ab[j] = 1;
      std::vector<Real> ba = ab;
      apply_gamma_currents(tables, sb, cb, ab, false);
      apply_gamma_currents(tables, sa, ca, ab, false);
      apply_gamma_currents(tables, sa, ca, ba, false);
      apply_gamma_currents(tables, sb, cb, ba, false);
      for (std::size_t i = 0; i < n_int; ++i) worst = std::max(worst, Real(abs(ab[i] - Mp * ba[i])));
    }
    residuals.push_back(worst);
    rep.residuals_by_cutoff.emplace_back(D, to_string(worst, 6));
  }
  rep.max_residual = to_string(residuals.back(), 6);
  std::string why;
  if (!approx_pass(residuals, tolerance_value(tolerance, ctx.precision_bits), ctx.precision_bits, why))
    rep.fail(why);
  return rep;
}

}  // namespace orbicrystal
