#pragma once

#include "orbicrystal/scalars.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace orbicrystal {

// Exponent vector over (t_1..t_K, tbar_1..tbar_K).
using Monomial = std::vector<std::uint8_t>;

inline int total_degree(const Monomial& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

// Human-readable monomial, e.g. "t1*tb2^2"; "1" for the unit.
std::string monomial_name(const Monomial& m);

// Polynomials in the coupling symbols modulo total degree > order.
template <class S>
class Jet {
 public:
  Jet() = default;
  Jet(int symbols, int order) : K_(symbols), order_(order) {}

  static Jet constant(int symbols, int order, const S& c) {
    Jet j(symbols, order);
    j.add_term(Monomial(static_cast<std::size_t>(2 * symbols), 0), c);
    return j;
  }
  // index in 0..2K-1: t_{index+1} for index < K, tbar_{index-K+1} otherwise.
  static Jet symbol(int symbols, int order, int index, const S& c = S(1)) {
    Jet j(symbols, order);
    Monomial m(static_cast<std::size_t>(2 * symbols), 0);
    m.at(static_cast<std::size_t>(index)) = 1;
    j.add_term(m, c);
    return j;
  }
  static Jet t(int symbols, int order, int k, const S& c = S(1)) { return symbol(symbols, order, k - 1, c); }
  static Jet tbar(int symbols, int order, int k, const S& c = S(1)) {
    return symbol(symbols, order, symbols + k - 1, c);
  }

  int symbols() const { return K_; }
  int order() const { return order_; }
  const std::map<Monomial, S>& terms() const { return terms_; }

  Monomial unit() const { return Monomial(static_cast<std::size_t>(2 * K_), 0); }

  S coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }
  S constant_term() const { return coeff(unit()); }

  void add_term(const Monomial& m, const S& c) {
    if (total_degree(m) > order_) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second = it->second + c;
    }
  }

  Jet& operator+=(const Jet& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Jet& operator*=(const S& c) {
    for (auto& [m, v] : terms_) v = v * c;
    return *this;
  }

  friend Jet operator+(Jet x, const Jet& y) { return x += y; }
  friend Jet operator-(Jet x, const Jet& y) { return x -= y; }
  friend Jet operator-(Jet x) {
    for (auto& [m, v] : x.terms_) v = -v;
    return x;
  }
  friend Jet operator*(Jet x, const S& c) { return x *= c; }
  friend Jet operator*(const S& c, Jet x) { return x *= c; }

  friend Jet operator*(const Jet& x, const Jet& y) {
    Jet out(std::max(x.K_, y.K_), std::min(x.order_, y.order_));
    for (const auto& [mx, cx] : x.terms_) {
      const int dx = total_degree(mx);
      for (const auto& [my, cy] : y.terms_) {
        if (dx + total_degree(my) > out.order_) continue;
        Monomial m = mx;
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<std::uint8_t>(m[i] + my[i]);
        out.add_term(m, cx * cy);
      }
    }
    return out;
  }

  template <class F>
  auto map(F&& f) const {
    using T = decltype(f(std::declval<S>()));
    Jet<T> out(K_, order_);
    for (const auto& [m, c] : terms_) out.add_term(m, f(c));
    return out;
  }

 private:
  void adopt(const Jet& o) {
    if (K_ != o.K_ || order_ != o.order_) {
      if (terms_.empty()) {
        K_ = o.K_;
        order_ = o.order_;
      } else if (!o.terms_.empty()) {
        throw PreconditionError("jets with different symbol sets or orders");
      }
    }
  }

  int K_ = 0;
  int order_ = 0;
  std::map<Monomial, S> terms_;
};

// Truncated exponential of a jet with vanishing constant term.
template <class S>
Jet<S> jet_exp(const Jet<S>& x) {
  if (!is_zero(x.constant_term())) throw PreconditionError("jet_exp: constant term must vanish");
  Jet<S> out = Jet<S>::constant(x.symbols(), x.order(), S(1));
  Jet<S> power = out;
  for (int n = 1; n <= x.order(); ++n) {
    power = power * x;
    power *= S(1) / S(n);
    out += power;
  }
  return out;
}

}  // namespace orbicrystal
