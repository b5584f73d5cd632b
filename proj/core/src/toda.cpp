#include "orbicrystal/toda.hpp"

#include "orbicrystal/tau.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace orbicrystal {

namespace {

void require_window(int lo, int hi) {
  if (lo > hi) throw ConfigError("matrix window is empty");
}

// scale^j q^{j/2 or j^2/2} / prod_{m<=j}(1 - q^m)
std::vector<Rational> hj_or_ej(const Context& ctx, bool elementary, const Rational& scale, int n_terms) {
  std::vector<Rational> c;
  if (n_terms <= 0) return c;
  c.reserve(static_cast<std::size_t>(n_terms));
  const Rational q = ctx.q();
  Rational denom = 1;
  Rational qm = 1;
  Rational sp = 1;
  for (int j = 0; j < n_terms; ++j) {
    if (j > 0) {
      qm *= q;
      denom *= Rational(1) - qm;
      sp *= scale;
    }
    const long e = elementary ? static_cast<long>(j) * j : j;
    c.push_back(sp * qpow(ctx, e, 2) / denom);
  }
  return c;
}

std::string describe_entry(int n, int m) {
  std::ostringstream os;
  os << "site " << n << ", offset " << (m - n);
  return os.str();
}

// Compares two exact matrices on the entries valid in both. Returns the number compared.
long compare_exact(const BandQ& x, const BandQ& y, const std::string& what, CheckReport& rep) {
  long compared = 0;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    for (int m = x.lo(); m <= x.hi(); ++m) {
      if (!x.valid(n, m) || !y.valid(n, m)) continue;
      ++compared;
      if (x.at(n, m) != y.at(n, m)) {
        rep.fail(what + ": mismatch at " + describe_entry(n, m) + ": " + to_string(x.at(n, m)) + " vs " +
                 to_string(y.at(n, m)));
        if (rep.max_residual == "0") rep.max_residual = to_string(Rational(abs(x.at(n, m) - y.at(n, m))));
        return compared;
      }
    }
  }
  if (compared == 0) rep.fail(what + ": no valid entries to compare (window too small)");
  return compared;
}

BandQ scalar_matrix(int lo, int hi, const Rational& c) {
  return BandQ::diagonal(lo, hi, [&](int) { return c; });
}

// 1 + c Lambda^{dir}
BandQ linear_factor(int lo, int hi, const Rational& c, int dir) {
  return BandQ::identity(lo, hi) + c * BandQ::shift(lo, hi, dir);
}

struct ChainOp {
  bool diagonal = true;
  Rational quad = 0;  // q-exponent coefficient of n^2
  Rational lin = 0;   // q-exponent coefficient of n
  Rational base = 1;  // base^n
  std::vector<Real> coeffs;
  int direction = 0;
};

class Chain {
 public:
  void diag(const Rational& quad, const Rational& lin, const Rational& base) {
    if (!ops_.empty() && ops_.back().diagonal) {
      ops_.back().quad += quad;
      ops_.back().lin += lin;
      ops_.back().base *= base;
      return;
    }
    ChainOp op;
    op.quad = quad;
    op.lin = lin;
    op.base = base;
    ops_.push_back(op);
  }
  void toeplitz(std::vector<Real> c, int direction) {
    ChainOp op;
    op.diagonal = false;
    op.coeffs = std::move(c);
    op.direction = direction;
    ops_.push_back(std::move(op));
  }

  // Rows e_n (n in window) pushed through every factor. Intermediate indices are kept inside
  // [lo - tail, hi + tail]; that clipping is the only truncation.
  BandR evaluate(const Context& ctx, int lo, int hi, int tail) const {
    const int w = hi - lo + 1;
    int imin = lo, imax = hi;
    std::vector<std::vector<Real>> rows(static_cast<std::size_t>(w));
    for (int r = 0; r < w; ++r) {
      rows[static_cast<std::size_t>(r)].assign(static_cast<std::size_t>(w), Real(0));
      rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)] = 1;
    }
    const Real ur = to_real(ctx.u);
    const long two_ab = 2L * ctx.a * ctx.b;
    for (const auto& op : ops_) {
      if (op.diagonal) {
        if (op.quad == 0 && op.lin == 0 && op.base == 1) continue;
        const Real br = to_real(op.base);
        std::vector<Real> d(static_cast<std::size_t>(imax - imin + 1));
        for (int n = imin; n <= imax; ++n) {
          const Rational e = (op.quad * n * n + op.lin * n) * two_ab;
          if (e.get_den() != 1) throw PreconditionError("diagonal exponent not integral in u");
          Real v = pow(ur, e.get_num().get_si());
          if (op.base != 1) v *= pow(br, n);
          d[static_cast<std::size_t>(n - imin)] = v;
        }
        for (auto& row : rows)
          for (std::size_t i = 0; i < row.size(); ++i) row[i] *= d[i];
        continue;
      }
      const int T = static_cast<int>(op.coeffs.size()) - 1;
      const int nmin = op.direction < 0 ? std::max(imin - T, lo - tail) : imin;
      const int nmax = op.direction < 0 ? imax : std::min(imax + T, hi + tail);
      for (auto& row : rows) {
        std::vector<Real> out(static_cast<std::size_t>(nmax - nmin + 1), Real(0));
        for (int j = imin; j <= imax; ++j) {
          const Real& x = row[static_cast<std::size_t>(j - imin)];
          if (x == 0) continue;
          for (int d = 0; d <= T; ++d) {
            const int k = op.direction < 0 ? j - d : j + d;
            if (k < nmin || k > nmax) break;
            out[static_cast<std::size_t>(k - nmin)] += x * op.coeffs[static_cast<std::size_t>(d)];
          }
        }
        row = std::move(out);
      }
      imin = nmin;
      imax = nmax;
    }
    BandR out(lo, hi, std::nullopt, std::nullopt);
    for (int n = lo; n <= hi; ++n)
      for (int m = lo; m <= hi; ++m)
        if (m >= imin && m <= imax)
          out.set(n, m, rows[static_cast<std::size_t>(n - lo)][static_cast<std::size_t>(m - imin)]);
    return out;
  }

 private:
  std::vector<ChainOp> ops_;
};

// Real Toeplitz coefficients c_0..c_T of Gamma(scale q^-rho) (never inverted here).
std::vector<Real> real_gamma(const Context& ctx, bool primed, const Rational& scale, int T) {
  std::vector<Real> c(static_cast<std::size_t>(T + 1));
  const Real q = to_real(ctx.q());
  const Real x = to_real(scale);
  const Real qh = to_real(qpow(ctx, 1, 2));
  c[0] = 1;
  Real qm = 1;
  for (int j = 1; j <= T; ++j) {
    qm *= q;
    // h_j = h_{j-1} x q^{1/2}/(1-q^j);  e_j = e_{j-1} x q^{j-1/2}/(1-q^j)
    Real step = x * qh / (1 - qm);
    if (primed) step *= qm / q;
    c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] * step;
  }
  return c;
}

Rational quad_coeff(long sign, long den) { return Rational(sign) / den; }

}  // namespace

std::vector<Rational> gamma_toeplitz(const Context& ctx, GammaSign sign, bool primed, const Rational& scale,
                                     int n_terms, bool inverse) {
  (void)sign;
  if (n_terms < 0) throw ConfigError("gamma_toeplitz: n_terms must be nonnegative");
  // (1 - xL)^{-1} products have h-coefficients; their inverses alternate the e-series and vice versa
  const bool elementary = primed != inverse;
  std::vector<Rational> c = hj_or_ej(ctx, elementary, scale, n_terms);
  if (inverse)
    for (std::size_t j = 1; j < c.size(); j += 2) c[j] = -c[j];
  return c;
}

BandQ gamma_matrix(const Context& ctx, int lo, int hi, GammaSign sign, bool primed, const Rational& scale,
                   bool inverse, int bandwidth) {
  require_window(lo, hi);
  if (bandwidth < 0) bandwidth = hi - lo;
  const auto c = gamma_toeplitz(ctx, sign, primed, scale, bandwidth + 1, inverse);
  return BandQ::toeplitz(lo, hi, c, sign == GammaSign::Plus ? 1 : -1, false);
}

BandQ lambda_power(int lo, int hi, int j) { return BandQ::shift(lo, hi, j); }

BandQ delta_matrix(int lo, int hi) {
  return BandQ::diagonal(lo, hi, [](int n) { return Rational(n); });
}

BandQ monomial_power(int lo, int hi, const Rational& base) {
  if (is_zero(base)) throw PreconditionError("monomial_power: zero base");
  return BandQ::diagonal(lo, hi, [&](int n) { return ipow(base, n); });
}

BandQ q_delta(const Context& ctx, int lo, int hi, long num, long den) {
  return BandQ::diagonal(lo, hi, [&](int n) { return qpow(ctx, num * n, den); });
}

BandQ framing_diag(const Context& ctx, int lo, int hi, int sign, long denom) {
  return BandQ::diagonal(lo, hi, [&](int n) { return qpow(ctx, static_cast<long>(sign) * n * n, denom); });
}

BandQ framing_conjugate(const Context& ctx, const BandQ& X, long denom, int sign) {
  return X.map_entries([&](int n, int m, const Rational& v) -> Rational {
    if (is_zero(v)) return v;
    return v * qpow(ctx, static_cast<long>(sign) * (static_cast<long>(n) * n - static_cast<long>(m) * m), denom);
  });
}

std::vector<Rational> kahler_constants(const Context& ctx) {
  std::vector<Rational> Q(static_cast<std::size_t>(ctx.a + ctx.b));
  Q[0] = 1;
  for (int i = 2; i <= ctx.a; ++i) Q[static_cast<std::size_t>(i - 1)] = Q[static_cast<std::size_t>(i - 2)] * ctx.P(i - 1);
  Q[static_cast<std::size_t>(ctx.a)] = Q[static_cast<std::size_t>(ctx.a - 1)] * ctx.Q0;
  for (int j = 2; j <= ctx.b; ++j)
    Q[static_cast<std::size_t>(ctx.a + j - 1)] = Q[static_cast<std::size_t>(ctx.a + j - 2)] * ctx.R(ctx.b - j + 1);
  for (const auto& x : Q)
    if (is_zero(x)) throw ConfigError("a Kahler constant Q^(k) vanishes");
  return Q;
}

Rational total_monomial(const Context& ctx) {
  Rational c = ctx.Q0;
  for (int i = 1; i <= ctx.a - 1; ++i) c *= ctx.P(i);
  for (int j = 1; j <= ctx.b - 1; ++j) c *= ctx.R(j);
  return c;
}

DressingPair initial_dressing(const Context& ctx, ModelKind model) {
  ctx.validate();
  if (is_zero(ctx.Q0)) throw ConfigError("Q0 must be nonzero");
  const int lo = ctx.window_lo, hi = ctx.window_hi;
  require_window(lo, hi);
  const auto Q = kahler_constants(ctx);
  const bool second = model == ModelKind::Second;
  BandQ lower = BandQ::identity(lo, hi);
  BandQ upper = BandQ::identity(lo, hi);
  for (int k = 1; k <= ctx.a + ctx.b; ++k) {
    const bool primed = second && k > ctx.a;
    const Rational& Qk = Q[static_cast<std::size_t>(k - 1)];
    lower = lower * gamma_matrix(ctx, lo, hi, GammaSign::Minus, primed, Qk, true);
    upper = upper * gamma_matrix(ctx, lo, hi, GammaSign::Plus, primed, Rational(1) / Qk, false);
  }
  const long da = 2L * ctx.a, db = 2L * ctx.b;
  const Rational c = total_monomial(ctx);
  DressingPair d;
  d.W = framing_conjugate(ctx, lower, da, 1);
  const BandQ diag = BandQ::diagonal(lo, hi, [&](int n) -> Rational {
    const long n2 = static_cast<long>(n) * n;
    return qpow(ctx, n2, da) * ipow(c, n) * qpow(ctx, second ? -n2 : n2, db);
  });
  d.Wbar = framing_conjugate(ctx, upper, da, 1) * diag;
  return d;
}

LaxPowers lax_init(const Context& ctx, const DressingPair& dressing) {
  const int lo = dressing.W.lo(), hi = dressing.W.hi();
  LaxPowers L;
  L.La = dressing.W * lambda_power(lo, hi, ctx.a) * dressing.W.triangular_inverse();
  L.Lbar_mb = dressing.Wbar * lambda_power(lo, hi, -ctx.b) * dressing.Wbar.triangular_inverse();
  if (!L.La.valid_interior() || !L.Lbar_mb.valid_interior())
    throw PreconditionError("lax_init: window too small for a valid interior");
  return L;
}

LaxPowers lax_init(const Context& ctx, ModelKind model) { return lax_init(ctx, initial_dressing(ctx, model)); }

ReducedFactors reduced_factors(const Context& ctx, ModelKind model) {
  ctx.validate();
  const int lo = ctx.window_lo, hi = ctx.window_hi;
  require_window(lo, hi);
  const auto Q = kahler_constants(ctx);
  const Rational qmh = qpow(ctx, -1, 2);
  const long da = 2L * ctx.a;
  const bool second = model == ModelKind::Second;

  BandQ b = qpow(ctx, ctx.a, 2) * q_delta(ctx, lo, hi, 1);
  for (int i = 1; i <= ctx.a; ++i)
    b = b * (lambda_power(lo, hi, 1) - scalar_matrix(lo, hi, Q[static_cast<std::size_t>(i - 1)] * qmh));
  BandQ c = BandQ::identity(lo, hi);
  for (int j = 1; j <= ctx.b; ++j) {
    const Rational& Qj = Q[static_cast<std::size_t>(ctx.a + j - 1)];
    c = c * linear_factor(lo, hi, (second ? Qj : -Qj) * qmh, -1);
  }
  ReducedFactors f;
  f.B = framing_conjugate(ctx, b, da, 1);
  f.C = framing_conjugate(ctx, c, da, 1);
  const Rational tot = total_monomial(ctx);
  f.D = ipow(tot, ctx.b);
  if (!second) {
    for (const auto& x : Q) f.D *= Rational(-1) / x;
  } else {
    for (int i = 1; i <= ctx.a; ++i) f.D *= -Q[static_cast<std::size_t>(i - 1)];
    for (int j = 1; j <= ctx.b; ++j) f.D /= Q[static_cast<std::size_t>(ctx.a + j - 1)];
  }
  return f;
}

BandQ lax_closed_form(const Context& ctx, ModelKind model) {
  const int lo = ctx.window_lo, hi = ctx.window_hi;
  const auto Q = kahler_constants(ctx);
  const Rational qmh = qpow(ctx, -1, 2);
  BandQ x = qpow(ctx, ctx.a, 2) * q_delta(ctx, lo, hi, 1);
  BandQ denom = BandQ::identity(lo, hi);
  for (int k = 1; k <= ctx.a + ctx.b; ++k) {
    const Rational& Qk = Q[static_cast<std::size_t>(k - 1)];
    if (model == ModelKind::Second && k > ctx.a)
      denom = denom * linear_factor(lo, hi, Qk * qmh, -1);
    else
      x = x * linear_factor(lo, hi, -Qk * qmh, -1);
  }
  if (model == ModelKind::Second) x = x * denom.triangular_inverse();
  x = x * lambda_power(lo, hi, ctx.a);
  return framing_conjugate(ctx, x, 2L * ctx.a, 1);
}

CheckReport gamma_conjugation_lemmas(const Context& ctx, const Rational& u_param, const Rational& v_param,
                                     const Rational& w_param, int lo, int hi, int bandwidth) {
  ctx.validate();
  require_window(lo, hi);
  if (is_zero(w_param)) throw ConfigError("the u^Delta parameter must be nonzero");
  CheckReport rep;
  rep.check = "lemmas";
  rep.param("a", ctx.a);
  rep.param("b", ctx.b);
  rep.param("u", to_string(ctx.u));
  rep.param("gamma_minus_scale", to_string(u_param));
  rep.param("gamma_plus_scale", to_string(v_param));
  rep.param("framing_scale", to_string(w_param));
  rep.param("window", "[" + std::to_string(lo) + "," + std::to_string(hi) + "]");

  const int a = ctx.a, b = ctx.b;
  const long da = 2L * a, db = 2L * b;
  const Rational qh = qpow(ctx, 1, 2), qmh = qpow(ctx, -1, 2);
  const BandQ qD = q_delta(ctx, lo, hi, 1), qmD = q_delta(ctx, lo, hi, -1);
  const BandQ wD = monomial_power(lo, hi, w_param), wmD = monomial_power(lo, hi, Rational(1) / w_param);
  auto gm = [&](bool primed, bool inv) {
    return gamma_matrix(ctx, lo, hi, GammaSign::Minus, primed, u_param, inv, bandwidth);
  };
  auto gp = [&](bool primed, bool inv) {
    return gamma_matrix(ctx, lo, hi, GammaSign::Plus, primed, v_param, inv, bandwidth);
  };

  long compared = 0;
  compared += compare_exact(framing_conjugate(ctx, lambda_power(lo, hi, a), da, -1),
                            qpow(ctx, a, 2) * (qD * lambda_power(lo, hi, a)), "key1 (Lambda^a framing)", rep);
  compared += compare_exact(wD * framing_conjugate(ctx, lambda_power(lo, hi, -b), db, 1) * wmD,
                            ipow(w_param, b) * qpow(ctx, -b, 2) * (qD * lambda_power(lo, hi, -b)),
                            "key1 (Lambda^-b framing)", rep);
  compared += compare_exact(gm(false, true) * qD * gm(false, false), qD * linear_factor(lo, hi, -u_param * qmh, -1),
                            "key2 (Gamma_-)", rep);
  compared += compare_exact(gp(false, false) * qD * gp(false, true), qD * linear_factor(lo, hi, -v_param * qh, 1),
                            "key2 (Gamma_+)", rep);
  compared += compare_exact(wD * framing_conjugate(ctx, lambda_power(lo, hi, -b), db, -1) * wmD,
                            ipow(w_param, b) * qpow(ctx, b, 2) * (qmD * lambda_power(lo, hi, -b)), "key3", rep);
  compared += compare_exact(gm(true, true) * qD * gm(true, false),
                            qD * linear_factor(lo, hi, u_param * qmh, -1).triangular_inverse(), "key4", rep);
  compared += compare_exact(gp(false, false) * qmD * gp(false, true),
                            qmD * linear_factor(lo, hi, -v_param * qmh, 1).triangular_inverse(), "key5 (Gamma_+)",
                            rep);
  compared += compare_exact(gp(true, false) * qmD * gp(true, true), qmD * linear_factor(lo, hi, v_param * qmh, 1),
                            "key5 (Gamma'_+)", rep);
  rep.param("entries_compared", compared);
  return rep;
}

namespace {

void shape_checks(const Context& ctx, const BandQ& La, const ReducedFactors& f, ModelKind model, CheckReport& rep) {
  const int a = ctx.a, b = ctx.b;
  if (f.B.min_offset() != 0 || f.B.max_offset() != a) rep.fail("B does not occupy offsets 0..a");
  if (f.C.min_offset() != -b || f.C.max_offset() != 0) rep.fail("C does not occupy offsets -b..0");
  for (int n = La.lo(); n <= La.hi(); ++n) {
    if (n + a <= La.hi() && f.B.at(n, n + a) != 1) rep.fail("B is not monic at site " + std::to_string(n));
    if (f.C.at(n, n) != 1) rep.fail("C has a non-unit constant term at site " + std::to_string(n));
  }
  if (model == ModelKind::First) {
    const BandQ BC = f.B * f.C;
    if (BC.min_offset() != -b || BC.max_offset() != a) rep.fail("BC is not supported on offsets -b..a");
    for (int n = La.lo(); n <= La.hi(); ++n) {
      for (int m = La.lo(); m <= La.hi(); ++m) {
        if (!La.valid(n, m)) continue;
        const int j = m - n;
        if ((j > a || j < -b) && !is_zero(La.at(n, m)))
          rep.fail("L^a has an entry outside offsets -b..a at " + describe_entry(n, m));
        if (j == a && La.at(n, m) != 1) rep.fail("L^a leading diagonal is not 1 at site " + std::to_string(n));
        if (j == -b && is_zero(La.at(n, m)))
          rep.fail("L^a lowest diagonal vanishes at site " + std::to_string(n));
      }
    }
  }
}

std::string interior_text(const BandQ& m) {
  const auto in = m.valid_interior();
  if (!in) return "none";
  return "[" + std::to_string(in->first) + "," + std::to_string(in->second) + "]";
}

}  // namespace

CheckReport factorization_check(const Context& ctx, ModelKind model) {
  ctx.validate();
  CheckReport rep;
  rep.check = "lax";
  rep.param("model", model_name(model));
  rep.param("a", ctx.a);
  rep.param("b", ctx.b);
  rep.param("u", to_string(ctx.u));
  rep.param("Q0", to_string(ctx.Q0));
  rep.param("window", "[" + std::to_string(ctx.window_lo) + "," + std::to_string(ctx.window_hi) + "]");

  const LaxPowers L = lax_init(ctx, model);
  const ReducedFactors f = reduced_factors(ctx, model);
  rep.param("La_valid_interior", interior_text(L.La));
  rep.param("Lbar_valid_interior", interior_text(L.Lbar_mb));
  rep.param("D", to_string(f.D));

  long compared = 0;
  compared += compare_exact(L.La, lax_closed_form(ctx, model), "L^a vs closed factorized form", rep);
  if (model == ModelKind::First) {
    compared += compare_exact(L.La, f.B * f.C, "L^a = BC", rep);
    compared += compare_exact(f.D * L.La, L.Lbar_mb, "D L^a = Lbar^-b", rep);
  } else {
    compared += compare_exact(L.La * f.C, f.B, "L'^a C' = B'", rep);
    compared += compare_exact(L.Lbar_mb * f.B, f.D * f.C, "Lbar'^-b B' = D' C'", rep);
    compared += compare_exact(f.B * f.C.triangular_inverse(), L.La, "B' C'^-1 = L'^a", rep);
  }
  shape_checks(ctx, L.La, f, model, rep);
  rep.param("entries_compared", compared);
  return rep;
}

namespace {

struct LinearSystem {
  std::vector<std::map<int, Rational>> rows;
  std::vector<Rational> rhs;
};

// Gaussian elimination over Q; free variables are set to zero. Returns false if inconsistent.
bool solve_exact(const LinearSystem& sys, int nvars, std::vector<Rational>& x, int& rank) {
  std::vector<std::vector<Rational>> m;
  m.reserve(sys.rows.size());
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    std::vector<Rational> row(static_cast<std::size_t>(nvars + 1), Rational(0));
    for (const auto& [v, c] : sys.rows[i]) row[static_cast<std::size_t>(v)] = c;
    row[static_cast<std::size_t>(nvars)] = sys.rhs[i];
    m.push_back(std::move(row));
  }
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (int col = 0; col < nvars && r < m.size(); ++col) {
    std::size_t p = r;
    while (p < m.size() && is_zero(m[p][static_cast<std::size_t>(col)])) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rational inv = Rational(1) / m[r][static_cast<std::size_t>(col)];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || is_zero(m[i][static_cast<std::size_t>(col)])) continue;
      const Rational f = m[i][static_cast<std::size_t>(col)];
      for (std::size_t j = static_cast<std::size_t>(col); j <= static_cast<std::size_t>(nvars); ++j)
        if (!is_zero(m[r][j])) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(col);
    ++r;
  }
  rank = static_cast<int>(r);
  for (std::size_t i = r; i < m.size(); ++i)
    if (!is_zero(m[i][static_cast<std::size_t>(nvars)])) return false;
  x.assign(static_cast<std::size_t>(nvars), Rational(0));
  for (std::size_t i = 0; i < r; ++i)
    x[static_cast<std::size_t>(pivot_col[i])] = m[i][static_cast<std::size_t>(nvars)];
  return true;
}

}  // namespace

CheckReport tangency_check(const Context& ctx, ModelKind model, int k) {
  ctx.validate();
  if (k <= 0 || k % ctx.a != 0)
    throw ConfigError("tangency_check: k must be a positive multiple of a (fractional powers of L are not built)");
  CheckReport rep;
  rep.check = "tangency";
  rep.param("model", model_name(model));
  rep.param("a", ctx.a);
  rep.param("b", ctx.b);
  rep.param("k", k);
  rep.param("u", to_string(ctx.u));
  rep.param("window", "[" + std::to_string(ctx.window_lo) + "," + std::to_string(ctx.window_hi) + "]");

  const int lo = ctx.window_lo, hi = ctx.window_hi, a = ctx.a, b = ctx.b;
  const LaxPowers L = lax_init(ctx, model);
  const ReducedFactors f = reduced_factors(ctx, model);
  BandQ Lk = L.La;
  for (int i = 1; i < k / a; ++i) Lk = Lk * L.La;
  const BandQ Bk = Lk.upper_part();
  const BandQ M = Bk * L.La - L.La * Bk;
  const bool second = model == ModelKind::Second;
  const BandQ rhs = second ? M * f.C : M;

  // unknowns: Bdot (n, n+j), j = 0..a-1 and Cdot (n, n-j), j = 1..b
  std::map<std::pair<int, int>, int> var;
  auto in = [&](int n) { return n >= lo && n <= hi; };
  for (int n = lo; n <= hi; ++n) {
    for (int j = 0; j <= a - 1; ++j)
      if (in(n + j)) var.emplace(std::make_pair(n, j), static_cast<int>(var.size()));
    for (int j = 1; j <= b; ++j)
      if (in(n - j)) var.emplace(std::make_pair(n, -j), static_cast<int>(var.size()));
  }
  auto bdot = [&](int n, int j) { return var.at({n, j}); };
  auto cdot = [&](int n, int j) { return var.at({n, -j}); };

  LinearSystem sys;
  for (int n = lo; n <= hi; ++n) {
    for (int m = lo; m <= hi; ++m) {
      if (!rhs.valid(n, m)) continue;
      std::map<int, Rational> row;
      bool complete = true;
      auto add = [&](int v, const Rational& c) {
        if (is_zero(c)) return;
        row[v] += c;
      };
      if (!second) {
        // (Bdot C)(n,m) + (B Cdot)(n,m)
        for (int j = 0; j <= a - 1; ++j) {
          const int kk = n + j;
          if (m - kk < -b || m - kk > 0) continue;
          if (!in(kk)) {
            complete = false;
            break;
          }
          add(bdot(n, j), f.C.at(kk, m));
        }
        for (int j = 1; j <= b && complete; ++j) {
          const int kk = m + j;
          if (kk - n < 0 || kk - n > a) continue;
          if (!in(kk)) {
            complete = false;
            break;
          }
          add(cdot(kk, j), f.B.at(n, kk));
        }
      } else {
        // Bdot(n,m) - (L^a Cdot)(n,m)
        if (m - n >= 0 && m - n <= a - 1) add(bdot(n, m - n), Rational(1));
        for (int j = 1; j <= b; ++j) {
          const int kk = m + j;
          if (kk - n > a) continue;
          if (!in(kk) || !L.La.valid(n, kk)) {
            complete = false;
            break;
          }
          add(cdot(kk, j), -L.La.at(n, kk));
        }
      }
      if (!complete) continue;
      sys.rows.push_back(std::move(row));
      sys.rhs.push_back(rhs.at(n, m));
    }
  }
  const int nvars = static_cast<int>(var.size());
  rep.param("unknowns", nvars);
  rep.param("equations", static_cast<long>(sys.rows.size()));
  if (sys.rows.empty()) {
    rep.fail("no complete equations inside the window");
    return rep;
  }
  std::vector<Rational> x;
  int rank = 0;
  if (!solve_exact(sys, nvars, x, rank)) {
    rep.param("rank", rank);
    rep.fail("tangency system is inconsistent");
    rep.max_residual = "inconsistent";
    return rep;
  }
  rep.param("rank", rank);
  Rational worst = 0;
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    Rational lhs = 0;
    for (const auto& [v, c] : sys.rows[i]) lhs += c * x[static_cast<std::size_t>(v)];
    const Rational d = abs(lhs - sys.rhs[i]);
    if (d > worst) worst = d;
  }
  rep.max_residual = to_string(worst);
  if (!is_zero(worst)) rep.fail("nonzero residual " + to_string(worst));
  bool zero_tangent = true;
  for (const auto& v : x) zero_tangent = zero_tangent && is_zero(v);
  rep.param("zero_tangent", zero_tangent ? "true" : "false");
  return rep;
}

BandR build_U(const Context& ctx, ModelKind model, int tail_cutoff) {
  ctx.validate();
  ctx.require_convergent("build_U");
  if (tail_cutoff <= 0) throw ConfigError("tail_cutoff must be positive");
  PrecisionScope scope(ctx.precision_bits);
  const bool second = model == ModelKind::Second;
  const long da = 2L * ctx.a, db = 2L * ctx.b;
  const int span = ctx.window_hi - ctx.window_lo + 2 * tail_cutoff;
  Chain ch;
  auto pair = [&](bool primed) {
    ch.toeplitz(real_gamma(ctx, primed, Rational(1), span), -1);
    ch.toeplitz(real_gamma(ctx, primed, Rational(1), span), 1);
  };
  ch.diag(quad_coeff(1, da), 0, 1);
  for (int i = 1; i <= ctx.a - 1; ++i) {
    pair(false);
    ch.diag(0, 0, ctx.P(i));
  }
  pair(false);
  ch.diag(0, 0, ctx.Q0);
  for (int j = ctx.b - 1; j >= 1; --j) {
    pair(second);
    ch.diag(0, 0, ctx.R(j));
  }
  pair(second);
  ch.diag(quad_coeff(second ? -1 : 1, db), 0, 1);
  return ch.evaluate(ctx, ctx.window_lo, ctx.window_hi, tail_cutoff);
}

BandR factorized_U(const Context& ctx, ModelKind model, int tail_cutoff) {
  ctx.validate();
  ctx.require_convergent("factorized_U");
  if (tail_cutoff <= 0) throw ConfigError("tail_cutoff must be positive");
  PrecisionScope scope(ctx.precision_bits);
  const bool second = model == ModelKind::Second;
  const long da = 2L * ctx.a, db = 2L * ctx.b;
  const auto Q = kahler_constants(ctx);
  const int span = ctx.window_hi - ctx.window_lo + 2 * tail_cutoff;
  Chain ch;
  // W^{-1} = q^{D^2/2a} prod Gamma_-(Q^(k)) q^{-D^2/2a}
  ch.diag(quad_coeff(1, da), 0, 1);
  for (int k = 1; k <= ctx.a + ctx.b; ++k)
    ch.toeplitz(real_gamma(ctx, second && k > ctx.a, Q[static_cast<std::size_t>(k - 1)], span), -1);
  ch.diag(quad_coeff(-1, da), 0, 1);
  // Wbar = q^{D^2/2a} prod Gamma_+(1/Q^(k)) c^D q^{+-D^2/2b}
  ch.diag(quad_coeff(1, da), 0, 1);
  for (int k = 1; k <= ctx.a + ctx.b; ++k)
    ch.toeplitz(real_gamma(ctx, second && k > ctx.a, Rational(1) / Q[static_cast<std::size_t>(k - 1)], span),
                1);
  ch.diag(0, 0, total_monomial(ctx));
  ch.diag(quad_coeff(second ? -1 : 1, db), 0, 1);
  return ch.evaluate(ctx, ctx.window_lo, ctx.window_hi, tail_cutoff);
}

CheckReport ufactor_check(const Context& ctx, ModelKind model, const std::vector<int>& cutoffs, double tolerance) {
  ctx.validate();
  ctx.require_convergent("ufactor_check");
  PrecisionScope scope(ctx.precision_bits);
  CheckReport rep;
  rep.check = "ufactor";
  rep.exact = false;
  rep.param("model", model_name(model));
  rep.param("a", ctx.a);
  rep.param("b", ctx.b);
  rep.param("u", to_string(ctx.u));
  rep.param("Q0", to_string(ctx.Q0));
  rep.param("window", "[" + std::to_string(ctx.window_lo) + "," + std::to_string(ctx.window_hi) + "]");
  rep.param("residual", "max relative entry difference");
  std::vector<Real> residuals;
  for (int T : cutoffs) {
    const BandR U = build_U(ctx, model, T);
    const BandR F = factorized_U(ctx, model, T);
    Real worst = 0;
    for (int n = U.lo(); n <= U.hi(); ++n) {
      for (int m = U.lo(); m <= U.hi(); ++m) {
        const Real x = U.at(n, m), y = F.at(n, m);
        const Real scale = std::max(abs(x), abs(y));
        if (scale == 0) continue;
        const Real r = abs(x - y) / scale;
        if (r > worst) worst = r;
      }
    }
    residuals.push_back(worst);
    rep.residuals_by_cutoff.emplace_back(T, to_string(worst, 6));
  }
  if (!residuals.empty()) rep.max_residual = to_string(residuals.back(), 6);
  const Real tol = tolerance > 0 ? Real(tolerance) : pow(Real(10), -static_cast<long>(ctx.precision_bits / 8));
  std::string why;
  if (!approx_pass(residuals, tol, ctx.precision_bits, why)) rep.fail(why);
  return rep;
}

std::string band_json(const BandQ& m, int indent) {
  nlohmann::json j;
  j["window"] = {m.lo(), m.hi()};
  j["ring"] = "exact";
  const int w = m.hi() - m.lo();
  const int omin = std::max(-w, m.min_offset().value_or(-w));
  const int omax = std::min(w, m.max_offset().value_or(w));
  nlohmann::json diags = nlohmann::json::array();
  for (int off = omin; off <= omax; ++off) {
    nlohmann::json entries = nlohmann::json::array();
    const int first = std::max(m.lo(), m.lo() - off);
    const int last = std::min(m.hi(), m.hi() - off);
    for (int n = first; n <= last; ++n) {
      if (m.valid(n, n + off))
        entries.push_back(to_string(m.at(n, n + off)));
      else
        entries.push_back(nullptr);
    }
    diags.push_back({{"offset", off}, {"first_site", first}, {"entries", entries}});
  }
  j["diagonals"] = diags;
  return j.dump(indent);
}

}  // namespace orbicrystal
