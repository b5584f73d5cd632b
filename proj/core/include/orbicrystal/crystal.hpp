#pragma once

#include "orbicrystal/jet.hpp"
#include "orbicrystal/partitions.hpp"
#include "orbicrystal/report.hpp"
#include "orbicrystal/scalars.hpp"
#include "orbicrystal/schur.hpp"
#include "orbicrystal/series.hpp"

#include <string>
#include <utility>
#include <vector>

namespace orbicrystal {

// First pairs s_lambda with s_lambda, Second pairs s_lambda with s_{lambda'}.
enum class ModelKind { First, Second };

std::string model_name(ModelKind m);
ModelKind parse_model(const std::string& name);

using JetQ = Jet<Rational>;

struct ZSeries {
  QSeries<JetQ> series;
  int charge = 0;
  ModelKind model = ModelKind::First;
};

Specialization p_specialization(const Context& ctx);
Specialization r_specialization(const Context& ctx);

// Zero jet and unit jet over ctx.jet_symbols couplings at ctx.jet_order.
JetQ zero_jet(const Context& ctx);
JetQ unit_jet(const Context& ctx);

// Sum over |lambda| <= q_degree of the deformed Boltzmann weights.
ZSeries z_series(const Context& ctx, ModelKind model, int s);

// exp(sum_k c_k p_k(A) p_k(B) Q^k / k) with c_k = 1 (First) or (-1)^{k-1} (Second).
QSeries<Rational> product_series(const Context& ctx, ModelKind model);

struct MacMahonValue {
  Real value;
  Real tail_bound;  // bound on |log| of the omitted factors
  int factors = 0;
};

// z_series at s = 0 and t = 0 against product_series, coefficientwise and exact.
CheckReport product_form_check(const Context& ctx, ModelKind model);

// prod_{n=1}^{tail_cutoff} (1 - x q^n)^{-n} at ctx.precision_bits.
MacMahonValue macmahon(const Context& ctx, const Rational& x);

// p_i = q^{(2i-1-a)/2a}, r_j = q^{(2j-1-b)/2b}.
std::pair<std::vector<Rational>, std::vector<Rational>> two_q_preset(int a, int b, const Context& ctx);

// jet_exp(sum_k t_k q^k/(1-q^k) [- sum_k tbar_k/(1-q^k)])
JetQ prefactor_ratio(const Context& ctx, ModelKind model, int s);

}  // namespace orbicrystal
