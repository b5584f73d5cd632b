#include "orbicrystal/scalars.hpp"
#include "orbicrystal/jet.hpp"

#include <mpfr.h>

#include <cctype>
#include <cmath>
#include <sstream>

namespace orbicrystal {

Context Context::make(int a, int b, const Rational& u) {
  Context ctx;
  ctx.a = a;
  ctx.b = b;
  ctx.u = u;
  ctx.p.assign(a, Rational(1));
  ctx.r.assign(b, Rational(1));
  ctx.validate();
  return ctx;
}

void Context::validate() const {
  if (a < 1 || b < 1) throw ConfigError("a and b must be positive integers");
  if (sgn(u) == 0 || abs(u) == 1) throw ConfigError("u must be nonzero and different from +1, -1");
  if (!p.empty() && static_cast<int>(p.size()) != a)
    throw ConfigError("p must list exactly a values");
  if (!r.empty() && static_cast<int>(r.size()) != b)
    throw ConfigError("r must list exactly b values");
  for (const auto& x : p)
    if (sgn(x) == 0) throw ConfigError("p values must be nonzero");
  for (const auto& x : r)
    if (sgn(x) == 0) throw ConfigError("r values must be nonzero");
  if (sgn(Q0) == 0) throw ConfigError("Q0 must be nonzero");
  if (q_degree < 0) throw ConfigError("q_degree must be nonnegative");
  if (fock_cutoff < 0) throw ConfigError("fock_cutoff must be nonnegative");
  if (jet_order < 0) throw ConfigError("jet_order must be nonnegative");
  if (jet_symbols < 0) throw ConfigError("jet_symbols must be nonnegative");
  if (precision_bits < 16) throw ConfigError("precision_bits must be at least 16");
  if (tail_cutoff < 1) throw ConfigError("tail_cutoff must be positive");
  if (window_lo > window_hi) throw ConfigError("empty window");
}

void Context::require_convergent(const char* where) const {
  if (abs(u) >= 1)
    throw PreconditionError(std::string(where) + " needs |u| < 1 (|q| < 1) for convergence");
}

Rational Context::q() const { return ipow(u, 2L * a * b); }

Rational Context::p_at(int i) const { return p.empty() ? Rational(1) : p.at(i - 1); }
Rational Context::r_at(int j) const { return r.empty() ? Rational(1) : r.at(j - 1); }

Rational Context::P(int i) const {
  Rational v = p_at(i) / p_at(i + 1);
  v.canonicalize();
  return v;
}

Rational Context::R(int j) const {
  Rational v = r_at(j) / r_at(j + 1);
  v.canonicalize();
  return v;
}

Context Context::normalized() const {
  Context out = *this;
  out.p.assign(a, Rational(1));
  out.r.assign(b, Rational(1));
  for (int i = 1; i <= a; ++i) out.p[i - 1] = p_at(i) / p_at(a);
  for (int j = 1; j <= b; ++j) out.r[j - 1] = r_at(j) / r_at(b);
  return out;
}

Rational ipow(const Rational& x, long n) {
  if (n == 0) return Rational(1);
  if (n < 0) {
    if (sgn(x) == 0) throw PreconditionError("negative power of zero");
    Rational inv = 1 / x;
    return ipow(inv, -n);
  }
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(n));
  out.canonicalize();
  return out;
}

Rational qpow(const Context& ctx, long num, long den) {
  if (den == 0) throw PreconditionError("qpow: zero denominator");
  const long two_ab = 2L * ctx.a * ctx.b;
  if (den < 0) {
    den = -den;
    num = -num;
  }
  if (two_ab % den != 0)
    throw PreconditionError("qpow: denominator " + std::to_string(den) + " does not divide 2ab = " +
                            std::to_string(two_ab));
  return ipow(ctx.u, num * (two_ab / den));
}

std::string to_string(const Rational& x) { return x.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational out;
  std::string t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  std::size_t start = 0;
  while (start < t.size() && std::isspace(static_cast<unsigned char>(t[start]))) ++start;
  t = t.substr(start);
  if (t.empty()) throw ConfigError("empty rational");
  if (t.find('.') != std::string::npos) {
    // decimal literal, read exactly
    bool neg = t[0] == '-';
    std::string body = (t[0] == '-' || t[0] == '+') ? t.substr(1) : t;
    auto dot = body.find('.');
    std::string digits = body.substr(0, dot) + body.substr(dot + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError("malformed rational '" + text + "'");
    mpz_class n(digits, 10);
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, body.size() - dot - 1);
    out = Rational(n, d);
    out.canonicalize();
    if (neg) out = -out;
    return out;
  }
  if (out.set_str(t, 10) != 0) throw ConfigError("malformed rational '" + text + "'");
  if (sgn(out.get_den()) == 0) throw ConfigError("zero denominator in '" + text + "'");
  out.canonicalize();
  return out;
}

unsigned digits10_for_bits(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120));
}

PrecisionScope::PrecisionScope(unsigned bits) : saved_(Real::default_precision()) {
  Real::default_precision(digits10_for_bits(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Real to_real(const Rational& x) {
  Real out;
  mpfr_set_q(out.backend().data(), x.get_mpq_t(), MPFR_RNDN);
  return out;
}

std::string to_string(const Real& x, int digits) {
  return x.str(digits, std::ios_base::scientific);
}

std::string monomial_name(const Monomial& m) {
  const std::size_t K = m.size() / 2;
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += (i < K ? "t" : "tb") + std::to_string(i < K ? i + 1 : i - K + 1);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace orbicrystal
