#pragma once

#include "orbicrystal/partitions.hpp"
#include "orbicrystal/report.hpp"
#include "orbicrystal/scalars.hpp"
#include "orbicrystal/schur.hpp"

#include <mpfr.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace orbicrystal {

// Charge-s sector truncated at |lambda| <= cutoff, states ordered as enumerate().
class FockBasis {
 public:
  FockBasis(int charge, int cutoff);

  int charge() const { return charge_; }
  int cutoff() const { return cutoff_; }
  std::size_t size() const { return states_.size(); }
  const Partition& state(std::size_t i) const { return states_[i]; }
  int weight(std::size_t i) const { return states_[i].weight(); }
  // -1 when lambda is outside the truncation
  long index(const Partition& lambda) const;
  // states of weight d occupy [weight_begin(d), weight_end(d))
  std::size_t weight_begin(int d) const;
  std::size_t weight_end(int d) const;

 private:
  int charge_;
  int cutoff_;
  std::vector<Partition> states_;
  std::vector<std::size_t> offsets_;
  std::unordered_map<Partition, std::size_t, PartitionHash> index_;
};

using BasisPtr = std::shared_ptr<const FockBasis>;
BasisPtr make_basis(int charge, int cutoff);

// Maya diagram of |lambda, s>: occupied modes lambda_i + s - i + 1, i >= 1.
namespace maya {

// first `count` occupied modes, strictly decreasing
std::vector<int> modes(const Partition& lambda, int s, int count);
bool occupied(const Partition& lambda, int s, int n);
// Inverse of modes(): rebuilds the partition from a decreasing list whose tail is the sea.
Partition from_modes(const std::vector<int>& modes, int s);

struct Result {
  Partition state;
  int charge;
  int sign;
};
// psi_{-n}: adds mode n (charge s+1), empty if n is occupied
std::optional<Result> create(const Partition& lambda, int s, int n);
// psi*_n: removes mode n (charge s-1), empty if n is free
std::optional<Result> annihilate(const Partition& lambda, int s, int n);
// psi_{-to} psi*_{from}; sign (-1)^{#occupied modes strictly between}
std::optional<Result> move(const Partition& lambda, int s, int from, int to);

// sum over occupied modes of f minus the same sum over the vacuum |0>
Rational diagonal(const Partition& lambda, int s, const std::function<Rational(long)>& f);

}  // namespace maya

template <class S>
struct FockVector {
  BasisPtr basis;
  std::vector<S> data;

  FockVector() = default;
  explicit FockVector(BasisPtr b) : basis(std::move(b)), data(basis->size(), S(0)) {}
  static FockVector unit(BasisPtr b, std::size_t i) {
    FockVector v(std::move(b));
    v.data[i] = S(1);
    return v;
  }
};

// Sparse operator stored by columns: col j lists (row, value).
template <class S>
class FockOperator {
 public:
  using Column = std::vector<std::pair<std::uint32_t, S>>;

  FockOperator() = default;
  FockOperator(BasisPtr b, std::optional<int> degree_shift, bool exact = true)
      : basis_(std::move(b)), degree_shift_(degree_shift), exact_(exact), cols_(basis_->size()) {}

  const BasisPtr& basis() const { return basis_; }
  std::optional<int> degree_shift() const { return degree_shift_; }
  bool exact() const { return exact_; }
  const Column& column(std::size_t j) const { return cols_[j]; }
  Column& column(std::size_t j) { return cols_[j]; }

  void add(std::size_t row, std::size_t col, const S& v) {
    if (is_zero(v)) return;
    for (auto& [r, x] : cols_[col]) {
      if (r == row) {
        x = x + v;
        return;
      }
    }
    cols_[col].emplace_back(static_cast<std::uint32_t>(row), v);
  }

  S entry(std::size_t row, std::size_t col) const {
    for (const auto& [r, x] : cols_[col])
      if (r == row) return x;
    return S(0);
  }

  // A v
  std::vector<S> apply(const std::vector<S>& v) const {
    std::vector<S> out(v.size(), S(0));
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      if (is_zero(v[j])) continue;
      for (const auto& [r, x] : cols_[j]) out[r] += x * v[j];
    }
    return out;
  }
  // w A
  std::vector<S> apply_bra(const std::vector<S>& w) const {
    std::vector<S> out(w.size(), S(0));
    for (std::size_t j = 0; j < cols_.size(); ++j) {
      S acc(0);
      for (const auto& [r, x] : cols_[j])
        if (!is_zero(w[r])) acc += w[r] * x;
      out[j] = acc;
    }
    return out;
  }

  FockOperator transpose() const {
    FockOperator t(basis_, degree_shift_ ? std::optional<int>(-*degree_shift_) : std::nullopt, exact_);
    for (std::size_t j = 0; j < cols_.size(); ++j)
      for (const auto& [r, x] : cols_[j]) t.cols_[r].emplace_back(static_cast<std::uint32_t>(j), x);
    return t;
  }

 private:
  BasisPtr basis_;
  std::optional<int> degree_shift_;
  bool exact_ = true;
  std::vector<Column> cols_;
};

using FockOperatorQ = FockOperator<Rational>;

// V^{(k)}_m = q^{-km/2} sum_n q^{kn} :psi_{m-n} psi*_n: on the truncated basis.
FockOperatorQ bilinear(const Context& ctx, const BasisPtr& basis, int k, int m);
// W_0 = sum_n n^2 :psi_{-n} psi*_n:
FockOperatorQ casimir_operator(const BasisPtr& basis);
// L_0 = sum_n n :psi_{-n} psi*_n:
FockOperatorQ energy_operator(const BasisPtr& basis);
// J_0
FockOperatorQ charge_operator(const BasisPtr& basis);

enum class GammaSign { Minus, Plus };

// <lambda|Gamma_-(x)|mu> = s_{lambda/mu}(x), primed: s_{lambda'/mu'}(x); Gamma_+ is the transpose.
// inverse: Gamma_-(x)^{-1} = Gamma'_-(-x), Gamma'_-(x)^{-1} = Gamma_-(-x).
FockOperatorQ gamma(const Context& ctx, const BasisPtr& basis, GammaSign sign, bool primed,
                    const Specialization& spec, bool inverse = false);
FockOperatorQ gamma(const Context& ctx, const BasisPtr& basis, GammaSign sign, bool primed,
                    const std::vector<Rational>& x, bool inverse = false);

// Ribbon tables: J_k |from> = sum sign |to>, |to| = |from| - k, for 1 <= k <= kmax.
class CurrentTables {
 public:
  struct Entry {
    std::uint32_t from;
    std::uint32_t to;
    std::int32_t sign;
  };
  CurrentTables(BasisPtr basis, int kmax);
  const BasisPtr& basis() const { return basis_; }
  int kmax() const { return static_cast<int>(tables_.size()); }
  const std::vector<Entry>& table(int k) const { return tables_.at(static_cast<std::size_t>(k - 1)); }

 private:
  BasisPtr basis_;
  std::vector<std::vector<Entry>> tables_;
};

namespace detail {

inline bool fast_zero(const Rational& x) { return sgn(x) == 0; }
inline bool fast_zero(const Real& x) { return mpfr_zero_p(x.backend().data()) != 0; }

}  // namespace detail

// out += c J_n v  (ket) or  out += c v J_n  (bra); n != 0.
template <class S>
void add_current(const CurrentTables& tables, int n, const S& c, const std::vector<S>& v, std::vector<S>& out,
                 bool bra) {
  const int k = n > 0 ? n : -n;
  if (k > tables.kmax()) return;
  // ket J_k and bra J_{-k} move weight down along from -> to
  const bool down = (n > 0) != bra;
  S tmp;
  for (const auto& e : tables.table(k)) {
    const std::uint32_t src = down ? e.from : e.to;
    const std::uint32_t dst = down ? e.to : e.from;
    if (detail::fast_zero(v[src])) continue;
    tmp = v[src] * c;
    if (e.sign > 0)
      out[dst] += tmp;
    else
      out[dst] -= tmp;
  }
}

inline bool all_zero_helper(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}
inline bool all_zero_helper(const std::vector<Real>& v) {
  for (const auto& x : v)
    if (!detail::fast_zero(x)) return false;
  return true;
}

// v <- exp(c J_n) v  (or v exp(c J_n) for bras)
template <class S>
void apply_exp_current(const CurrentTables& tables, int n, const S& c, std::vector<S>& v, bool bra) {
  if (detail::fast_zero(c)) return;
  std::vector<S> term = v;
  const int limit = tables.basis()->cutoff() + 1;
  for (int j = 1; j <= limit; ++j) {
    std::vector<S> next(v.size(), S(0));
    add_current(tables, n, c, term, next, bra);
    if (all_zero_helper(next)) break;
    const S inv = S(1) / S(j);
    for (auto& x : next) x *= inv;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += next[i];
    term = std::move(next);
  }
}

// Power-sum coefficients c_k of Gamma_{+-}(x) = exp(sum_k c_k J_{+-k}), k = 1..kmax.
std::vector<Rational> gamma_current_coefficients(const Context& ctx, bool primed, const Specialization& spec,
                                                 int kmax, bool inverse);

// v <- Gamma v (ket) or v Gamma (bra), via the exponential of currents.
template <class S>
void apply_gamma_currents(const CurrentTables& tables, GammaSign sign, const std::vector<S>& coeffs,
                          std::vector<S>& v, bool bra) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    apply_exp_current(tables, sign == GammaSign::Minus ? -k : k, coeffs[i], v, bra);
  }
}

// Cross-check: Gamma built from the exponential of currents.
FockOperatorQ gamma_from_currents(const Context& ctx, const CurrentTables& tables, GammaSign sign, bool primed,
                                  const Specialization& spec, bool inverse = false);

enum class TorusConvention {
  Derived,  // coefficient q^{(lm-kn)/2} - q^{(kn-lm)/2} in both branches
  Literal   // k+l = 0 branch with q^{-k(m+n)} - q^{k(m+n)}
};

// [V^{(k)}_m, V^{(l)}_n] against the quantum torus relation, on states of weight <= D - margin.
CheckReport commutator_check(const Context& ctx, int s, int k, int m, int l, int n, int margin,
                             TorusConvention convention = TorusConvention::Derived);

enum class ShiftKind { I, II, III, FracA, FracB };
ShiftKind parse_shift_kind(const std::string& name);
std::string shift_kind_name(ShiftKind kind);

// Exact check of the shift symmetries on interior matrix elements at cutoff ctx.fock_cutoff.
CheckReport shift_symmetry_check(const Context& ctx, ShiftKind kind, int k, int m, int margin, int s = 0);

// Diagonal entries of J_0, L_0, W_0, H_k against the closed formulas.
CheckReport eigenvalue_check(const Context& ctx, int max_weight, int max_charge, int max_k);

}  // namespace orbicrystal
