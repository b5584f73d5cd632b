#pragma once

#include "orbicrystal/scalars.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orbicrystal {

// Window [lo, hi] of a bi-infinite matrix. Offset j means the coefficient of
// Lambda^j, i.e. the entries (n, n + j). min_off/max_off bound the offsets the
// true matrix can occupy (nullopt = unbounded); entries outside them are exact
// zeros. Inside the window each entry carries a validity flag: invalid entries
// would need data from outside the window.
template <class S>
class BandMatrix {
 public:
  BandMatrix() = default;
  BandMatrix(int lo, int hi, std::optional<int> min_off, std::optional<int> max_off)
      : lo_(lo), hi_(hi), min_off_(min_off), max_off_(max_off) {
    if (lo > hi) throw PreconditionError("empty band-matrix window");
    const std::size_t w = static_cast<std::size_t>(hi - lo + 1);
    values_.assign(w * w, S(0));
    valid_.assign(w * w, 1);
  }

  static BandMatrix identity(int lo, int hi) { return diagonal(lo, hi, [](int) { return S(1); }); }

  static BandMatrix diagonal(int lo, int hi, const std::function<S(int)>& f) {
    BandMatrix m(lo, hi, 0, 0);
    for (int n = lo; n <= hi; ++n) m.set(n, n, f(n));
    return m;
  }

  // Lambda^j
  static BandMatrix shift(int lo, int hi, int j) {
    BandMatrix m(lo, hi, j, j);
    for (int n = lo; n <= hi; ++n)
      if (n + j >= lo && n + j <= hi) m.set(n, n + j, S(1));
    return m;
  }

  // sum_j c_j Lambda^{direction * j}; entries beyond the list are treated as unknown
  // unless `finite` says the series stops there.
  static BandMatrix toeplitz(int lo, int hi, const std::vector<S>& c, int direction, bool finite = false) {
    const int len = static_cast<int>(c.size());
    std::optional<int> lower, upper;
    if (direction > 0) {
      lower = 0;
      if (finite) upper = len - 1;
    } else {
      upper = 0;
      if (finite) lower = -(len - 1);
    }
    BandMatrix m(lo, hi, lower, upper);
    for (int n = lo; n <= hi; ++n) {
      for (int k = lo; k <= hi; ++k) {
        const int j = direction > 0 ? k - n : n - k;
        if (j < 0) continue;
        if (j < len) {
          m.set(n, k, c[static_cast<std::size_t>(j)]);
        } else if (!finite) {
          m.set_valid(n, k, false);
        }
      }
    }
    return m;
  }

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  std::optional<int> min_offset() const { return min_off_; }
  std::optional<int> max_offset() const { return max_off_; }
  bool in_window(int n) const { return n >= lo_ && n <= hi_; }

  bool structural(int n, int m) const {
    const int j = m - n;
    return (!min_off_ || j >= *min_off_) && (!max_off_ || j <= *max_off_);
  }

  const S& at(int n, int m) const { return values_[idx(n, m)]; }
  bool valid(int n, int m) const { return valid_[idx(n, m)] != 0; }
  // entry (n, n + j)
  const S& entry(int n, int j) const { return at(n, n + j); }

  void set(int n, int m, const S& v) {
    if (!structural(n, m) && !is_zero(v))
      throw PreconditionError("band matrix entry outside its structural offsets");
    values_[idx(n, m)] = v;
  }
  void set_valid(int n, int m, bool v) { valid_[idx(n, m)] = v ? 1 : 0; }

  bool exact() const;

  // Largest centered sub-window [lo+d, hi-d] on which every entry is valid.
  std::optional<std::pair<int, int>> valid_interior() const {
    for (int d = 0; lo_ + d <= hi_ - d; ++d) {
      bool ok = true;
      for (int n = lo_ + d; n <= hi_ - d && ok; ++n)
        for (int m = lo_ + d; m <= hi_ - d && ok; ++m) ok = valid(n, m);
      if (ok) return std::make_pair(lo_ + d, hi_ - d);
    }
    return std::nullopt;
  }

  // Offsets >= 0 (upper) or < 0 (strictly lower).
  BandMatrix upper_part() const { return part(true); }
  BandMatrix strictly_lower_part() const { return part(false); }

  BandMatrix map_entries(const std::function<S(int, int, const S&)>& f) const {
    BandMatrix out = *this;
    for (int n = lo_; n <= hi_; ++n)
      for (int m = lo_; m <= hi_; ++m)
        if (structural(n, m)) out.values_[idx(n, m)] = f(n, m, at(n, m));
    return out;
  }

  friend BandMatrix operator*(const BandMatrix& x, const BandMatrix& y) {
    x.require_same_window(y);
    std::optional<int> lower, upper;
    if (x.min_off_ && y.min_off_) lower = *x.min_off_ + *y.min_off_;
    if (x.max_off_ && y.max_off_) upper = *x.max_off_ + *y.max_off_;
    BandMatrix out(x.lo_, x.hi_, lower, upper);
    constexpr long inf = 1L << 40;
    for (int n = x.lo_; n <= x.hi_; ++n) {
      for (int m = x.lo_; m <= x.hi_; ++m) {
        // k with k - n in x's offsets and m - k in y's offsets
        long kmin = -inf, kmax = inf;
        if (x.min_off_) kmin = std::max(kmin, static_cast<long>(n) + *x.min_off_);
        if (x.max_off_) kmax = std::min(kmax, static_cast<long>(n) + *x.max_off_);
        if (y.max_off_) kmin = std::max(kmin, static_cast<long>(m) - *y.max_off_);
        if (y.min_off_) kmax = std::min(kmax, static_cast<long>(m) - *y.min_off_);
        if (kmin > kmax) continue;
        if (kmin < x.lo_ || kmax > x.hi_) {
          out.set_valid(n, m, false);
          continue;
        }
        S acc(0);
        bool ok = true;
        for (long k = kmin; k <= kmax; ++k) {
          const int kk = static_cast<int>(k);
          ok = ok && x.valid(n, kk) && y.valid(kk, m);
          if (is_zero(x.at(n, kk)) || is_zero(y.at(kk, m))) continue;
          acc += x.at(n, kk) * y.at(kk, m);
        }
        out.values_[out.idx(n, m)] = acc;
        out.set_valid(n, m, ok);
      }
    }
    return out;
  }

  friend BandMatrix operator+(const BandMatrix& x, const BandMatrix& y) { return combine(x, y, 1); }
  friend BandMatrix operator-(const BandMatrix& x, const BandMatrix& y) { return combine(x, y, -1); }
  friend BandMatrix operator*(const S& c, BandMatrix x) {
    for (auto& v : x.values_) v = c * v;
    return x;
  }

  // Inverse of a triangular matrix with invertible diagonal, computed on the window;
  // entry (n, m) only involves indices between n and m, so no truncation enters.
  BandMatrix triangular_inverse() const {
    const bool lower = max_off_ && *max_off_ <= 0;
    const bool upper = min_off_ && *min_off_ >= 0;
    if (!lower && !upper) throw PreconditionError("triangular_inverse: matrix is not triangular");
    const bool diag = lower && upper;
    std::optional<int> lo_off = 0, hi_off = 0;
    if (!diag) {
      if (lower) lo_off.reset();
      if (upper) hi_off.reset();
    }
    BandMatrix out(lo_, hi_, lo_off, hi_off);
    for (int n = lo_; n <= hi_; ++n)
      if (is_zero(at(n, n))) throw PreconditionError("triangular_inverse: zero on the diagonal");
    if (diag) {
      for (int n = lo_; n <= hi_; ++n) {
        out.values_[idx(n, n)] = S(1) / at(n, n);
        out.set_valid(n, n, valid(n, n));
      }
      return out;
    }
    for (int m = lo_; m <= hi_; ++m) {
      if (lower) {
        // column m: rows n >= m
        out.values_[idx(m, m)] = S(1) / at(m, m);
        out.set_valid(m, m, valid(m, m));
        for (int n = m + 1; n <= hi_; ++n) {
          S acc(0);
          bool ok = valid(n, n);
          for (int k = m; k < n; ++k) {
            ok = ok && valid(n, k) && out.valid(k, m);
            acc += at(n, k) * out.at(k, m);
          }
          out.values_[idx(n, m)] = -acc / at(n, n);
          out.set_valid(n, m, ok);
        }
      } else {
        // column m: rows n <= m, from the diagonal upwards
        out.values_[idx(m, m)] = S(1) / at(m, m);
        out.set_valid(m, m, valid(m, m));
        for (int n = m - 1; n >= lo_; --n) {
          S acc(0);
          bool ok = valid(n, n);
          for (int k = n + 1; k <= m; ++k) {
            ok = ok && valid(n, k) && out.valid(k, m);
            acc += at(n, k) * out.at(k, m);
          }
          out.values_[idx(n, m)] = -acc / at(n, n);
          out.set_valid(n, m, ok);
        }
      }
    }
    return out;
  }

 private:
  std::size_t idx(int n, int m) const {
    if (!in_window(n) || !in_window(m)) throw std::out_of_range("band matrix index outside window");
    return static_cast<std::size_t>(n - lo_) * static_cast<std::size_t>(hi_ - lo_ + 1) +
           static_cast<std::size_t>(m - lo_);
  }

  void require_same_window(const BandMatrix& o) const {
    if (lo_ != o.lo_ || hi_ != o.hi_) throw PreconditionError("band matrices on different windows");
  }

  static BandMatrix combine(const BandMatrix& x, const BandMatrix& y, int sign) {
    x.require_same_window(y);
    std::optional<int> lower, upper;
    if (x.min_off_ && y.min_off_) lower = std::min(*x.min_off_, *y.min_off_);
    if (x.max_off_ && y.max_off_) upper = std::max(*x.max_off_, *y.max_off_);
    BandMatrix out(x.lo_, x.hi_, lower, upper);
    for (std::size_t i = 0; i < out.values_.size(); ++i) {
      if (sign > 0)
        out.values_[i] = x.values_[i] + y.values_[i];
      else
        out.values_[i] = x.values_[i] - y.values_[i];
      out.valid_[i] = x.valid_[i] && y.valid_[i];
    }
    return out;
  }

  BandMatrix part(bool upper) const {
    std::optional<int> lower_b = min_off_, upper_b = max_off_;
    if (upper) {
      lower_b = std::max(0, min_off_.value_or(0));
    } else {
      upper_b = std::min(-1, max_off_.value_or(-1));
    }
    BandMatrix out(lo_, hi_, lower_b, upper_b);
    for (int n = lo_; n <= hi_; ++n) {
      for (int m = lo_; m <= hi_; ++m) {
        if (!out.structural(n, m)) continue;
        out.values_[idx(n, m)] = at(n, m);
        out.set_valid(n, m, valid(n, m));
      }
    }
    return out;
  }

  int lo_ = 0;
  int hi_ = -1;
  std::optional<int> min_off_;
  std::optional<int> max_off_;
  std::vector<S> values_;
  std::vector<char> valid_;
};

template <>
inline bool BandMatrix<Rational>::exact() const {
  return true;
}
template <>
inline bool BandMatrix<Real>::exact() const {
  return false;
}

using BandQ = BandMatrix<Rational>;
using BandR = BandMatrix<Real>;

}  // namespace orbicrystal
