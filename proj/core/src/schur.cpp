#include "orbicrystal/schur.hpp"

#include <utility>

namespace orbicrystal {

Specialization Specialization::principal(const Context& ctx, std::vector<Rational> scales) {
  return Specialization{std::move(scales), qpow(ctx, 1, 2), ctx.q()};
}

Specialization Specialization::scaled(const Rational& c) const {
  Specialization out = *this;
  for (auto& x : out.scales) x *= c;
  return out;
}

Specialization Specialization::joined(const Specialization& other) const {
  if (first != other.first || ratio != other.ratio)
    throw PreconditionError("cannot join specializations with different geometric sequences");
  Specialization out = *this;
  out.scales.insert(out.scales.end(), other.scales.begin(), other.scales.end());
  return out;
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Rational(1);
  Rational prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && sgn(m[piv][k]) == 0) ++piv;
      if (piv == n) return Rational(0);
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  Rational d = m[n - 1][n - 1];
  return sign > 0 ? d : Rational(-d);
}

namespace {

// Multiplies the series a by b, truncating at n_max.
void convolve_into(std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size(), Rational(0));
  for (std::size_t n = 0; n < a.size(); ++n)
    for (std::size_t i = 0; i <= n; ++i)
      if (sgn(a[i]) != 0 && sgn(b[n - i]) != 0) out[n] += a[i] * b[n - i];
  a = std::move(out);
}

}  // namespace

std::vector<Rational> h_values(const std::vector<Rational>& x, int n_max) {
  std::vector<Rational> h(static_cast<std::size_t>(n_max + 1), Rational(0));
  h[0] = 1;
  for (const auto& xi : x) {
    // 1/(1 - x_i t)
    std::vector<Rational> g(h.size());
    Rational p = 1;
    for (auto& c : g) {
      c = p;
      p *= xi;
    }
    convolve_into(h, g);
  }
  return h;
}

std::vector<Rational> h_values(const Context& ctx, const Specialization& spec, int n_max) {
  (void)ctx;
  std::vector<Rational> h(static_cast<std::size_t>(n_max + 1), Rational(0));
  h[0] = 1;
  for (const auto& x : spec.scales) {
    // sum_n (x first)^n t^n / prod_{m<=n} (1 - ratio^m)
    std::vector<Rational> g(h.size());
    Rational term = 1;
    Rational rm = 1;
    const Rational xf = x * spec.first;
    for (std::size_t n = 0; n < g.size(); ++n) {
      if (n > 0) {
        rm *= spec.ratio;
        if (rm == 1) throw PreconditionError("h_values: ratio is a root of unity");
        term = term * xf / (1 - rm);
      }
      g[n] = term;
    }
    convolve_into(h, g);
  }
  return h;
}

Rational skew_from_h(const Partition& lambda, const Partition& mu, const std::vector<Rational>& h) {
  if (!lambda.contains(mu)) return Rational(0);
  const int n = lambda.length();
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int idx = lambda.part(i) - mu.part(j) - i + j;
      if (idx < 0) {
        m[i - 1][j - 1] = 0;
      } else {
        if (idx >= static_cast<int>(h.size())) throw PreconditionError("skew_from_h: h sequence too short");
        m[i - 1][j - 1] = h[static_cast<std::size_t>(idx)];
      }
    }
  }
  return determinant(std::move(m));
}

SchurEvaluator::SchurEvaluator(const Context& ctx, Specialization spec) : ctx_(ctx), spec_(std::move(spec)) {
  h_.push_back(Rational(1));
}

void SchurEvaluator::extend(int n) {
  if (n < static_cast<int>(h_.size())) return;
  h_ = h_values(ctx_, spec_, std::max(n, 2 * static_cast<int>(h_.size())));
}

const Rational& SchurEvaluator::h(int n) {
  extend(n);
  return h_[static_cast<std::size_t>(n)];
}

Rational SchurEvaluator::schur(const Partition& lambda) { return skew(lambda, Partition()); }

Rational SchurEvaluator::skew(const Partition& lambda, const Partition& mu) {
  extend(lambda.part(1) + lambda.length());
  return skew_from_h(lambda, mu, h_);
}

Rational schur(const Context& ctx, const Partition& lambda, const Specialization& spec) {
  SchurEvaluator ev(ctx, spec);
  return ev.schur(lambda);
}

Rational skew_schur(const Context& ctx, const Partition& lambda, const Partition& mu,
                    const std::vector<Rational>& x) {
  (void)ctx;
  return skew_from_h(lambda, mu, h_values(x, lambda.part(1) + lambda.length()));
}

Rational skew_schur(const Context& ctx, const Partition& lambda, const Partition& mu,
                    const Specialization& spec) {
  SchurEvaluator ev(ctx, spec);
  return ev.skew(lambda, mu);
}

Rational powersum(const Context& ctx, int k, const Specialization& spec) {
  (void)ctx;
  if (k < 1) throw PreconditionError("powersum: k must be positive");
  Rational rk = ipow(spec.ratio, k);
  if (rk == 1) throw PreconditionError("powersum: ratio^k = 1");
  Rational fk = ipow(spec.first, k);
  Rational out = 0;
  for (const auto& x : spec.scales) out += ipow(x, k) * fk / (1 - rk);
  return out;
}

}  // namespace orbicrystal
