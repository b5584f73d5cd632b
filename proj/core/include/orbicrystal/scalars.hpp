#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace orbicrystal {

using Rational = mpq_class;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

// Bad user input (parameters, flags). Maps to exit code 2 in the CLI.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical precondition of an operation does not hold.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Context {
  int a = 1;
  int b = 1;
  Rational u{1, 2};
  std::vector<Rational> p;  // p_1..p_a; empty means all ones
  std::vector<Rational> r;  // r_1..r_b; empty means all ones
  int q_degree = 6;
  int fock_cutoff = 16;
  int jet_order = 1;
  int jet_symbols = 3;  // K: number of t_k (and of tbar_k)
  unsigned precision_bits = 256;
  int tail_cutoff = 80;
  Rational Q0{1};  // frozen Kahler parameter for the matrix module
  int window_lo = -12;
  int window_hi = 12;

  static Context make(int a, int b, const Rational& u);

  // Throws ConfigError when an invariant is violated.
  void validate() const;
  // |u| < 1, needed wherever an infinite resummation appears.
  void require_convergent(const char* where) const;

  Rational q() const;
  Rational p_at(int i) const;  // 1-based
  Rational r_at(int j) const;  // 1-based
  Rational P(int i) const;     // p_i / p_{i+1}, 1 <= i <= a-1
  Rational R(int j) const;     // r_j / r_{j+1}, 1 <= j <= b-1

  // p_i / p_a and r_j / r_b, so that p_a = r_b = 1.
  Context normalized() const;
};

Rational ipow(const Rational& x, long n);

// q^(num/den) = u^(2ab num/den); den must divide 2ab.
Rational qpow(const Context& ctx, long num, long den = 1);

std::string to_string(const Rational& x);
Rational parse_rational(const std::string& text);

unsigned digits10_for_bits(unsigned bits);

// Sets the default working precision of Real for its lifetime.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

Real to_real(const Rational& x);
std::string to_string(const Real& x, int digits = 30);

template <class S>
S from_rational(const Rational& x);

template <>
inline Rational from_rational<Rational>(const Rational& x) {
  return x;
}

template <>
inline Real from_rational<Real>(const Rational& x) {
  return to_real(x);
}

inline Real magnitude(const Rational& x) { return to_real(abs(x)); }
inline Real magnitude(const Real& x) { return abs(x); }

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Real& x) { return x == 0; }

}  // namespace orbicrystal
