#pragma once

#include "orbicrystal/scalars.hpp"

#include <string>
#include <utility>
#include <vector>

namespace orbicrystal {

// Truncated power series  Q^offset * sum_{i=0}^{degree} c_i Q^i.
template <class S>
class QSeries {
 public:
  QSeries() = default;
  QSeries(int degree, const S& zero, int offset = 0)
      : coeffs_(static_cast<std::size_t>(degree + 1), zero), offset_(offset) {}

  static QSeries constant(int degree, const S& value, const S& zero, int offset = 0) {
    QSeries out(degree, zero, offset);
    out.coeffs_[0] = value;
    return out;
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  int offset() const { return offset_; }
  void set_offset(int off) { offset_ = off; }

  S& operator[](int i) { return coeffs_.at(static_cast<std::size_t>(i)); }
  const S& operator[](int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  const std::vector<S>& coeffs() const { return coeffs_; }

  QSeries& operator+=(const QSeries& o) {
    require_aligned(o);
    const int d = std::min(degree(), o.degree());
    coeffs_.resize(static_cast<std::size_t>(d + 1));
    for (int i = 0; i <= d; ++i) coeffs_[i] = coeffs_[i] + o.coeffs_[i];
    return *this;
  }
  QSeries& operator-=(const QSeries& o) {
    require_aligned(o);
    const int d = std::min(degree(), o.degree());
    coeffs_.resize(static_cast<std::size_t>(d + 1));
    for (int i = 0; i <= d; ++i) coeffs_[i] = coeffs_[i] - o.coeffs_[i];
    return *this;
  }
  friend QSeries operator+(QSeries x, const QSeries& y) { return x += y; }
  friend QSeries operator-(QSeries x, const QSeries& y) { return x -= y; }

  template <class F>
  auto map(F&& f) const {
    using T = decltype(f(coeffs_[0]));
    QSeries<T> out;
    std::vector<T> c;
    c.reserve(coeffs_.size());
    for (const auto& x : coeffs_) c.push_back(f(x));
    out.assign(std::move(c), offset_);
    return out;
  }

  void assign(std::vector<S> c, int offset) {
    coeffs_ = std::move(c);
    offset_ = offset;
  }

 private:
  void require_aligned(const QSeries& o) const {
    if (o.offset_ != offset_)
      throw PreconditionError("series offsets differ (" + std::to_string(offset_) + " vs " +
                              std::to_string(o.offset_) + ")");
  }

  std::vector<S> coeffs_;
  int offset_ = 0;
};

// Product truncated at the smaller degree; offsets add.
template <class A, class B>
auto series_mul(const QSeries<A>& x, const QSeries<B>& y) {
  using T = decltype(x[0] * y[0]);
  const int d = std::min(x.degree(), y.degree());
  std::vector<T> c;
  c.reserve(static_cast<std::size_t>(d + 1));
  for (int n = 0; n <= d; ++n) {
    T acc = x[0] * y[n];
    for (int i = 1; i <= n; ++i) acc = acc + x[i] * y[n - i];
    c.push_back(std::move(acc));
  }
  QSeries<T> out;
  out.assign(std::move(c), x.offset() + y.offset());
  return out;
}

template <class S>
QSeries<S> series_inv(const QSeries<S>& x) {
  if (is_zero(x[0]))
    throw PreconditionError("series_inv: constant term is zero (term Q^" + std::to_string(x.offset()) +
                            ")");
  const int d = x.degree();
  std::vector<S> c(static_cast<std::size_t>(d + 1), x[0] - x[0]);
  const S inv0 = S(1) / x[0];
  c[0] = inv0;
  for (int n = 1; n <= d; ++n) {
    S acc = x[n] * c[0];
    for (int i = 1; i < n; ++i) acc = acc + x[n - i] * c[i];
    c[n] = -acc * inv0;
  }
  QSeries<S> out;
  out.assign(std::move(c), -x.offset());
  return out;
}

// exp(x) for x without constant term, via n f_n = sum_k k x_k f_{n-k}.
template <class S>
QSeries<S> series_exp(const QSeries<S>& x) {
  if (x.offset() != 0) throw PreconditionError("series_exp: nonzero offset");
  if (!is_zero(x[0])) throw PreconditionError("series_exp: constant term must vanish");
  const int d = x.degree();
  std::vector<S> f(static_cast<std::size_t>(d + 1), x[0] - x[0]);
  f[0] = S(1);
  for (int n = 1; n <= d; ++n) {
    S acc = x[1] * f[n - 1];
    for (int k = 2; k <= n; ++k) acc = acc + S(k) * x[k] * f[n - k];
    f[n] = acc / S(n);
  }
  QSeries<S> out;
  out.assign(std::move(f), 0);
  return out;
}

// log(x) for x with constant term 1, via n g_n = n x_n - sum_{k<n} k g_k x_{n-k}.
template <class S>
QSeries<S> series_log(const QSeries<S>& x) {
  if (x.offset() != 0) throw PreconditionError("series_log: nonzero offset");
  if (x[0] != S(1)) throw PreconditionError("series_log: constant term must be 1");
  const int d = x.degree();
  std::vector<S> g(static_cast<std::size_t>(d + 1), x[0] - x[0]);
  for (int n = 1; n <= d; ++n) {
    S acc = S(n) * x[n];
    for (int k = 1; k < n; ++k) acc = acc - S(k) * g[k] * x[n - k];
    g[n] = acc / S(n);
  }
  QSeries<S> out;
  out.assign(std::move(g), 0);
  return out;
}

}  // namespace orbicrystal
