#pragma once

#include "orbicrystal/band_matrix.hpp"
#include "orbicrystal/crystal.hpp"
#include "orbicrystal/fock.hpp"
#include "orbicrystal/report.hpp"

#include <string>
#include <vector>

namespace orbicrystal {

// Toeplitz coefficients of Gamma_{+/-}(scale q^-rho) (unprimed: h_j, primed: e_j) or of its
// inverse. The sign only fixes the direction (Lambda^{+1} or Lambda^{-1}), not the list.
std::vector<Rational> gamma_toeplitz(const Context& ctx, GammaSign sign, bool primed, const Rational& scale,
                                     int n_terms, bool inverse = false);

// sum_j c_j Lambda^{+-j} on [lo, hi], entries with j > bandwidth marked untrusted.
BandQ gamma_matrix(const Context& ctx, int lo, int hi, GammaSign sign, bool primed, const Rational& scale,
                   bool inverse = false, int bandwidth = -1);

BandQ lambda_power(int lo, int hi, int j);
BandQ delta_matrix(int lo, int hi);
// base^Delta
BandQ monomial_power(int lo, int hi, const Rational& base);
// q^{(num/den) Delta}
BandQ q_delta(const Context& ctx, int lo, int hi, long num, long den = 1);
// q^{sign Delta^2 / denom}
BandQ framing_diag(const Context& ctx, int lo, int hi, int sign, long denom);
// q^{sign Delta^2/denom} X q^{-sign Delta^2/denom}, entrywise
BandQ framing_conjugate(const Context& ctx, const BandQ& X, long denom, int sign);

// Q^(1..a+b) and the monomial P_1...P_{a-1} Q0 R_{b-1}...R_1.
std::vector<Rational> kahler_constants(const Context& ctx);
Rational total_monomial(const Context& ctx);

struct DressingPair {
  BandQ W;
  BandQ Wbar;
};

struct LaxPowers {
  BandQ La;
  BandQ Lbar_mb;
};

struct ReducedFactors {
  BandQ B;
  BandQ C;
  Rational D;
};

DressingPair initial_dressing(const Context& ctx, ModelKind model);
LaxPowers lax_init(const Context& ctx, ModelKind model);
LaxPowers lax_init(const Context& ctx, const DressingPair& dressing);
ReducedFactors reduced_factors(const Context& ctx, ModelKind model);
// Closed factorized form of L^a (second model: with the C' factor inverted on the window).
BandQ lax_closed_form(const Context& ctx, ModelKind model);

// The five lemma groups on [lo, hi]; u_param scales the Gamma_- identities, v_param the
// Gamma_+ ones (v = 1/u in the usual form) and w_param the u^Delta framing identities.
CheckReport gamma_conjugation_lemmas(const Context& ctx, const Rational& u_param, const Rational& v_param,
                                     const Rational& w_param, int lo = -8, int hi = 8, int bandwidth = -1);

CheckReport factorization_check(const Context& ctx, ModelKind model);
CheckReport tangency_check(const Context& ctx, ModelKind model, int k);

// Approximate generating matrix U (U') on the window; intermediate summation indices stay within
// tail_cutoff of the window.
BandR build_U(const Context& ctx, ModelKind model, int tail_cutoff);
// W^{-1} Wbar evaluated the same way.
BandR factorized_U(const Context& ctx, ModelKind model, int tail_cutoff);
// Max relative entry difference of build_U and factorized_U per cutoff; passes on 10x decay.
CheckReport ufactor_check(const Context& ctx, ModelKind model, const std::vector<int>& cutoffs,
                          double tolerance = 0);

std::string band_json(const BandQ& m, int indent = -1);

}  // namespace orbicrystal
