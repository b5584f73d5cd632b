#pragma once

#include "orbicrystal/crystal.hpp"
#include "orbicrystal/fock.hpp"
#include "orbicrystal/jet.hpp"
#include "orbicrystal/report.hpp"
#include "orbicrystal/series.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace orbicrystal {

struct GFactor {
  enum class Kind { Framing, GammaMinus, GammaPlus, Weight, QGrading };
  Kind kind = Kind::QGrading;
  bool primed = false;
  long framing_den = 0;  // q^{framing_sign W_0 / framing_den}
  int framing_sign = 1;
  Rational weight;  // X in X^{L_0}
};

// Ordered factors of g (First) or g' (Second), left to right; exactly one QGrading.
struct GPipeline {
  ModelKind model = ModelKind::First;
  std::vector<GFactor> factors;
  std::string describe() const;
};

// with_gammas = false drops every Gamma factor (diagonal pipeline).
GPipeline build_g(const Context& ctx, ModelKind model, bool with_gammas = true);

// One vector per jet monomial.
template <class S>
using JetVector = std::map<Monomial, std::vector<S>>;

// A term c * t_symbol * J_n of an exponent sum_k c_k t_k J_{n_k}.
struct CurrentInsertion {
  int symbol;  // jet symbol index in 0..2K-1
  int mode;    // n in J_n, nonzero
  Rational coeff;
};

// Propagates bras and kets through a g-pipeline on the charge-s sector truncated at `cutoff`.
class TauEngine {
 public:
  TauEngine(const Context& ctx, GPipeline g, int s, int cutoff);

  int charge() const { return s_; }
  int cutoff() const { return cutoff_; }
  const BasisPtr& basis() const { return basis_; }

  JetVector<Real> unit(std::size_t index) const;
  // v exp(sum c t J) (bra) or exp(sum c t J) v (ket), truncated at ctx.jet_order
  JetVector<Real> insert(JetVector<Real> v, const std::vector<CurrentInsertion>& terms, bool bra) const;
  JetVector<Real> apply_current(const JetVector<Real>& v, int n, bool bra) const;

  // bra times the factors left of Q^{L_0}; ket through the factors right of it
  JetVector<Real> left(JetVector<Real> bra) const;
  JetVector<Real> right(JetVector<Real> ket) const;

  // sum over the Q^{L_0} split: coefficient of Q^{w + s(s+1)/2} for w <= q_degree
  QSeries<Jet<Real>> pair(const JetVector<Real>& bra, const JetVector<Real>& ket) const;

 private:
  void apply_factor(const GFactor& f, JetVector<Real>& v, bool bra, int keep) const;

  Context ctx_;
  GPipeline g_;
  int s_;
  int cutoff_;
  BasisPtr basis_;
  std::shared_ptr<CurrentTables> tables_;
  std::vector<Real> gamma_plain_;
  std::vector<Real> gamma_primed_;
  std::vector<long> casimir_;
};

// T_k coefficients (way 1, J_{ak}) and Tbar_k coefficients (way 2, J_{-bk}).
Rational t_coefficient(const Context& ctx, int k);
Rational tbar_coefficient(const Context& ctx, int k, bool with_sign);

// Theorem 1 (both ways) or Theorem 2 as a ratio-normalized identity in Q and jets.
// tolerance <= 0 selects 10^{-precision_bits/8}.
CheckReport theorem_check(const Context& ctx, int which, int s, const std::vector<int>& cutoffs,
                          double tolerance = 0);

// c1 J_{ak} g = c2 g J_{-bk} on states of weight <= interior_weight, per Q-power.
CheckReport jg_gj_check(const Context& ctx, const std::vector<int>& ks, int s, int interior_weight,
                        const std::vector<int>& cutoffs, double tolerance = 0);

// Exact: the fermionic expression equals (p'_1 r'_1)^{s(s+1)/2} c^{N-n} z_series coefficients.
CheckReport fermionic_check(const Context& ctx, ModelKind model, int s);

// Gamma_+(x q^-rho) Gamma_-(y q^-rho)^{-1} = M(xy)^{-1} Gamma_-^{-1} Gamma_+ (unprimed), and
// Gamma'_-(x q^-rho)^{-1} Gamma'_+(y q^-rho) = M(xy)^{power} Gamma'_+ Gamma'_-^{-1} (primed).
CheckReport gamma_cr_check(const Context& ctx, bool primed, const Rational& x, const Rational& y, int power,
                           int interior_weight, const std::vector<int>& cutoffs, double tolerance = 0);

// Shared acceptance rule for approximate checks.
bool approx_pass(const std::vector<Real>& residuals, const Real& tolerance, unsigned precision_bits,
                 std::string& why);

}  // namespace orbicrystal
