#include "orbicrystal/fock.hpp"

#include <algorithm>
#include <stdexcept>

namespace orbicrystal {

FockBasis::FockBasis(int charge, int cutoff) : charge_(charge), cutoff_(cutoff) {
  if (cutoff < 0) throw ConfigError("fock cutoff must be nonnegative");
  offsets_.push_back(0);
  for (int d = 0; d <= cutoff; ++d) {
    auto layer = partitions_of(d);
    states_.insert(states_.end(), layer.begin(), layer.end());
    offsets_.push_back(states_.size());
  }
  index_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
}

long FockBasis::index(const Partition& lambda) const {
  auto it = index_.find(lambda);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

std::size_t FockBasis::weight_begin(int d) const {
  if (d < 0) return 0;
  if (d > cutoff_) return states_.size();
  return offsets_[static_cast<std::size_t>(d)];
}

std::size_t FockBasis::weight_end(int d) const {
  if (d < 0) return 0;
  if (d > cutoff_) return states_.size();
  return offsets_[static_cast<std::size_t>(d) + 1];
}

BasisPtr make_basis(int charge, int cutoff) { return std::make_shared<const FockBasis>(charge, cutoff); }

namespace maya {

std::vector<int> modes(const Partition& lambda, int s, int count) {
  std::vector<int> m(static_cast<std::size_t>(count));
  for (int i = 1; i <= count; ++i) m[static_cast<std::size_t>(i - 1)] = lambda.part(i) + s - i + 1;
  return m;
}

bool occupied(const Partition& lambda, int s, int n) {
  const int l = lambda.length();
  if (n <= s - l) return true;
  for (int i = 1; i <= l; ++i)
    if (lambda.part(i) + s - i + 1 == n) return true;
  return false;
}

Partition from_modes(const std::vector<int>& m, int s) {
  std::vector<int> parts(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const int li = m[i] - s + static_cast<int>(i);
    if (li < 0) throw std::logic_error("maya: mode list is not a charge-s state");
    parts[i] = li;
  }
  return Partition(parts);
}

namespace {

int count_above(const Partition& lambda, int s, int n) {
  // modes above n all lie among the first length + max(0, s - length - n) + 1 entries
  int c = 0;
  for (int i = 1;; ++i) {
    const int mi = lambda.part(i) + s - i + 1;
    if (mi <= n) break;
    ++c;
  }
  return c;
}

int list_length(const Partition& lambda, int s, int n) {
  const int l = lambda.length();
  return l + 2 + std::max(0, s - l - n) + std::max(0, n - s + l);
}

}  // namespace

std::optional<Result> create(const Partition& lambda, int s, int n) {
  if (occupied(lambda, s, n)) return std::nullopt;
  const int sign = count_above(lambda, s, n) % 2 ? -1 : 1;
  auto m = modes(lambda, s, list_length(lambda, s, n));
  m.push_back(n);
  std::sort(m.begin(), m.end(), std::greater<int>());
  return Result{from_modes(m, s + 1), s + 1, sign};
}

std::optional<Result> annihilate(const Partition& lambda, int s, int n) {
  if (!occupied(lambda, s, n)) return std::nullopt;
  const int sign = count_above(lambda, s, n) % 2 ? -1 : 1;
  auto m = modes(lambda, s, list_length(lambda, s, n));
  m.erase(std::find(m.begin(), m.end(), n));
  return Result{from_modes(m, s - 1), s - 1, sign};
}

std::optional<Result> move(const Partition& lambda, int s, int from, int to) {
  auto r1 = annihilate(lambda, s, from);
  if (!r1) return std::nullopt;
  auto r2 = create(r1->state, r1->charge, to);
  if (!r2) return std::nullopt;
  return Result{r2->state, r2->charge, r1->sign * r2->sign};
}

Rational diagonal(const Partition& lambda, int s, const std::function<Rational(long)>& f) {
  const int l = lambda.length();
  Rational sum = 0;
  for (int i = 1; i <= l; ++i) sum += f(lambda.part(i) + s - i + 1) - f(1 - i);
  // sea below the first l rows: modes <= s - l against vacuum modes <= -l
  if (s > 0) {
    for (long n = -l + 1; n <= s - l; ++n) sum += f(n);
  } else if (s < 0) {
    for (long n = s - l + 1; n <= -l; ++n) sum -= f(n);
  }
  return sum;
}

}  // namespace maya

FockOperatorQ bilinear(const Context& ctx, const BasisPtr& basis, int k, int m) {
  FockOperatorQ op(basis, m);
  const int s = basis->charge();
  for (std::size_t j = 0; j < basis->size(); ++j) {
    const Partition& mu = basis->state(j);
    if (m == 0) {
      Rational d = maya::diagonal(mu, s, [&](long n) { return qpow(ctx, static_cast<long>(k) * n); });
      op.add(j, j, d);
      continue;
    }
    const Rational pre = qpow(ctx, -static_cast<long>(k) * m, 2);
    const int count = mu.length() + std::abs(m) + 1;
    for (int n : maya::modes(mu, s, count)) {
      const int target = n - m;
      auto r = maya::move(mu, s, n, target);
      if (!r) continue;
      const long row = basis->index(r->state);
      if (row < 0) continue;
      Rational v = pre * qpow(ctx, static_cast<long>(k) * n);
      if (r->sign < 0) v = -v;
      op.add(static_cast<std::size_t>(row), j, v);
    }
  }
  return op;
}

namespace {

FockOperatorQ diagonal_operator(const BasisPtr& basis, const std::function<Rational(long)>& f) {
  FockOperatorQ op(basis, 0);
  for (std::size_t j = 0; j < basis->size(); ++j)
    op.add(j, j, maya::diagonal(basis->state(j), basis->charge(), f));
  return op;
}

}  // namespace

FockOperatorQ casimir_operator(const BasisPtr& basis) {
  return diagonal_operator(basis, [](long n) { return Rational(n * n); });
}

FockOperatorQ energy_operator(const BasisPtr& basis) {
  return diagonal_operator(basis, [](long n) { return Rational(n); });
}

FockOperatorQ charge_operator(const BasisPtr& basis) {
  return diagonal_operator(basis, [](long) { return Rational(1); });
}

namespace {

template <class SkewFn>
FockOperatorQ gamma_impl(const BasisPtr& basis, GammaSign sign, bool primed, bool inverse, SkewFn&& skew) {
  FockOperatorQ minus(basis, std::nullopt);
  // unprimed inverse and primed non-inverse both use conjugate shapes
  const bool transposed_shapes = primed != inverse;
  for (std::size_t j = 0; j < basis->size(); ++j) {
    const Partition& mu = basis->state(j);
    const Partition muc = transposed_shapes ? conjugate(mu) : mu;
    for (std::size_t i = basis->weight_begin(mu.weight()); i < basis->size(); ++i) {
      const Partition& lambda = basis->state(i);
      if (!lambda.contains(mu)) continue;
      Rational v = transposed_shapes ? skew(conjugate(lambda), muc) : skew(lambda, muc);
      if (inverse && (lambda.weight() - mu.weight()) % 2) v = -v;
      minus.add(i, j, v);
    }
  }
  return sign == GammaSign::Minus ? minus : minus.transpose();
}

}  // namespace

FockOperatorQ gamma(const Context& ctx, const BasisPtr& basis, GammaSign sign, bool primed,
                    const Specialization& spec, bool inverse) {
  SchurEvaluator ev(ctx, spec);
  return gamma_impl(basis, sign, primed, inverse,
                    [&](const Partition& l, const Partition& m) { return ev.skew(l, m); });
}

FockOperatorQ gamma(const Context& ctx, const BasisPtr& basis, GammaSign sign, bool primed,
                    const std::vector<Rational>& x, bool inverse) {
  (void)ctx;
  const auto h = h_values(x, 2 * basis->cutoff() + 2);
  return gamma_impl(basis, sign, primed, inverse,
                    [&](const Partition& l, const Partition& m) { return skew_from_h(l, m, h); });
}

CurrentTables::CurrentTables(BasisPtr basis, int kmax) : basis_(std::move(basis)) {
  const int s = basis_->charge();
  tables_.resize(static_cast<std::size_t>(std::max(kmax, 0)));
  for (int k = 1; k <= kmax; ++k) {
    auto& table = tables_[static_cast<std::size_t>(k - 1)];
    for (std::size_t i = basis_->weight_begin(k); i < basis_->size(); ++i) {
      const Partition& lambda = basis_->state(i);
      for (int n : maya::modes(lambda, s, lambda.length())) {
        if (maya::occupied(lambda, s, n - k)) continue;
        auto r = maya::move(lambda, s, n, n - k);
        const long to = basis_->index(r->state);
        table.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(to), r->sign});
      }
    }
  }
}

std::vector<Rational> gamma_current_coefficients(const Context& ctx, bool primed, const Specialization& spec,
                                                 int kmax, bool inverse) {
  std::vector<Rational> c;
  for (int k = 1; k <= kmax; ++k) {
    Rational v = powersum(ctx, k, spec) / k;
    if (primed && k % 2 == 0) v = -v;
    if (inverse) v = -v;
    c.push_back(v);
  }
  return c;
}

FockOperatorQ gamma_from_currents(const Context& ctx, const CurrentTables& tables, GammaSign sign, bool primed,
                                  const Specialization& spec, bool inverse) {
  const BasisPtr& basis = tables.basis();
  const auto coeffs = gamma_current_coefficients(ctx, primed, spec, tables.kmax(), inverse);
  FockOperatorQ op(basis, std::nullopt);
  for (std::size_t j = 0; j < basis->size(); ++j) {
    std::vector<Rational> v(basis->size(), Rational(0));
    v[j] = 1;
    apply_gamma_currents(tables, sign, coeffs, v, false);
    for (std::size_t i = 0; i < v.size(); ++i) op.add(i, j, v[i]);
  }
  return op;
}

namespace {

std::string entry_label(const FockBasis& basis, std::size_t row, std::size_t col) {
  return "<" + basis.state(row).to_string() + "|.|" + basis.state(col).to_string() + ">";
}

std::vector<Rational> column_of(const FockOperatorQ& op, std::size_t j) {
  std::vector<Rational> v(op.basis()->size(), Rational(0));
  for (const auto& [r, x] : op.column(j)) v[r] = x;
  return v;
}

}  // namespace

CheckReport commutator_check(const Context& ctx, int s, int k, int m, int l, int n, int margin,
                             TorusConvention convention) {
  CheckReport rep;
  rep.check = "torus";
  rep.param("k", k);
  rep.param("m", m);
  rep.param("l", l);
  rep.param("n", n);
  rep.param("s", s);
  rep.param("cutoff", ctx.fock_cutoff);
  rep.param("margin", margin);
  rep.param("convention", convention == TorusConvention::Derived ? "derived" : "literal");
  if (margin < std::abs(m) + std::abs(n)) throw PreconditionError("commutator_check: margin < |m| + |n|");
  auto basis = make_basis(s, ctx.fock_cutoff);
  const auto A = bilinear(ctx, basis, k, m);
  const auto B = bilinear(ctx, basis, l, n);
  const auto C = bilinear(ctx, basis, k + l, m + n);

  Rational coef;
  Rational central = 0;
  if (k + l != 0 || convention == TorusConvention::Derived) {
    const long e = static_cast<long>(l) * m - static_cast<long>(k) * n;
    coef = qpow(ctx, e, 2) - qpow(ctx, -e, 2);
  } else {
    const long e = static_cast<long>(k) * (m + n);
    coef = qpow(ctx, -e) - qpow(ctx, e);
  }
  if (m + n == 0) {
    if (k + l != 0) {
      const Rational qkl = qpow(ctx, k + l);
      central = -coef * qkl / (1 - qkl);
    } else {
      central = m;
    }
  }

  const int interior = ctx.fock_cutoff - margin;
  long compared = 0;
  for (std::size_t j = 0; j < basis->weight_end(interior); ++j) {
    auto ej = column_of(B, j);
    auto ab = A.apply(ej);
    auto ba = B.apply(column_of(A, j));
    auto rhs = column_of(C, j);
    for (auto& x : rhs) x *= coef;
    rhs[j] += central;
    for (std::size_t i = 0; i < basis->size(); ++i) {
      ++compared;
      const Rational lhs = ab[i] - ba[i];
      if (lhs != rhs[i]) {
        rep.fail(entry_label(*basis, i, j) + ": lhs " + to_string(lhs) + " rhs " + to_string(rhs[i]));
        rep.max_residual = to_string(Rational(abs(lhs - rhs[i])));
        return rep;
      }
    }
  }
  rep.param("entries", compared);
  return rep;
}

ShiftKind parse_shift_kind(const std::string& name) {
  if (name == "i") return ShiftKind::I;
  if (name == "ii") return ShiftKind::II;
  if (name == "iii") return ShiftKind::III;
  if (name == "frac_a") return ShiftKind::FracA;
  if (name == "frac_b") return ShiftKind::FracB;
  throw ConfigError("unknown shift kind '" + name + "'");
}

std::string shift_kind_name(ShiftKind kind) {
  switch (kind) {
    case ShiftKind::I:
      return "i";
    case ShiftKind::II:
      return "ii";
    case ShiftKind::III:
      return "iii";
    case ShiftKind::FracA:
      return "frac_a";
    case ShiftKind::FracB:
      return "frac_b";
  }
  return "?";
}

namespace {

// q^{W_0/2c} X q^{-W_0/2c} == Y entrywise
void framing_compare(const Context& ctx, const FockBasis& basis, const FockOperatorQ& X, const FockOperatorQ& Y,
                     long den, int margin, CheckReport& rep) {
  std::vector<long> w(basis.size());
  const int s = basis.charge();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Partition& lam = basis.state(i);
    w[i] = kappa(lam) + (2L * s + 1) * lam.weight() + static_cast<long>(s) * (s + 1) * (2 * s + 1) / 6;
  }
  const int interior = basis.cutoff() - margin;
  long compared = 0;
  for (std::size_t j = 0; j < basis.weight_end(interior); ++j) {
    auto x = column_of(X, j);
    auto y = column_of(Y, j);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis.weight(i) > interior) continue;
      ++compared;
      Rational lhs = is_zero(x[i]) ? Rational(0) : Rational(x[i] * qpow(ctx, w[i] - w[j], den));
      if (lhs != y[i]) {
        rep.fail(entry_label(basis, i, j) + ": lhs " + to_string(lhs) + " rhs " + to_string(y[i]));
        return;
      }
    }
  }
  rep.param("entries", compared);
}

}  // namespace

CheckReport shift_symmetry_check(const Context& ctx, ShiftKind kind, int k, int m, int margin, int s) {
  CheckReport rep;
  rep.check = "shift";
  rep.param("kind", shift_kind_name(kind));
  rep.param("k", k);
  rep.param("m", m);
  rep.param("s", s);
  rep.param("a", ctx.a);
  rep.param("b", ctx.b);
  rep.param("cutoff", ctx.fock_cutoff);
  rep.param("margin", margin);
  auto basis = make_basis(s, ctx.fock_cutoff);

  if (kind == ShiftKind::III || kind == ShiftKind::FracA || kind == ShiftKind::FracB) {
    FockOperatorQ X, Y;
    long den = 2;
    if (kind == ShiftKind::III) {
      X = bilinear(ctx, basis, k, m);
      Y = bilinear(ctx, basis, k - m, m);
    } else if (kind == ShiftKind::FracA) {
      den = 2L * ctx.a;
      X = bilinear(ctx, basis, k, ctx.a * k);
      Y = bilinear(ctx, basis, 0, ctx.a * k);
    } else {
      den = 2L * ctx.b;
      X = bilinear(ctx, basis, -k, -ctx.b * k);
      Y = bilinear(ctx, basis, 0, -ctx.b * k);
    }
    framing_compare(ctx, *basis, X, Y, den, margin, rep);
    return rep;
  }

  if (k <= 0) throw PreconditionError("shift_symmetry_check: kinds i and ii need k > 0");
  const int required = std::max({0, -m, m + k});
  if (margin < required)
    throw PreconditionError("shift_symmetry_check: margin " + std::to_string(margin) + " below required " +
                            std::to_string(required));

  const bool primed = kind == ShiftKind::II;
  const Specialization rho = Specialization::principal(ctx, {Rational(1)});
  const auto Gm = gamma(ctx, basis, GammaSign::Minus, primed, rho, false);
  const auto Gm_inv = gamma(ctx, basis, GammaSign::Minus, primed, rho, true);
  const auto Gp = Gm.transpose();
  const auto Gp_inv = Gm_inv.transpose();

  const int kk = primed ? -k : k;
  const auto X = bilinear(ctx, basis, kk, m);
  const auto Y = bilinear(ctx, basis, kk, m + k);
  const Rational qk = qpow(ctx, k);
  const Rational shift = primed ? Rational(1 / (1 - qk)) : Rational(-qk / (1 - qk));
  const Rational sign = (!primed && k % 2) ? Rational(-1) : Rational(1);

  const int interior = ctx.fock_cutoff - margin;
  const std::size_t n_int = basis->weight_end(interior);
  // columns of Gamma_+ (X + shift) Gamma_+^{-1}, every intermediate sum finite
  std::vector<std::vector<Rational>> lhs(n_int);
  for (std::size_t j = 0; j < n_int; ++j) {
    auto v = column_of(Gp_inv, j);
    auto xv = X.apply(v);
    if (m == 0)
      for (std::size_t i = 0; i < v.size(); ++i) xv[i] += shift * v[i];
    lhs[j] = Gp.apply(xv);
  }
  long compared = 0;
  for (std::size_t i = 0; i < n_int; ++i) {
    std::vector<Rational> w(basis->size(), Rational(0));
    w[i] = 1;
    w = Gm_inv.apply_bra(w);
    auto wy = Y.apply_bra(w);
    if (m + k == 0)
      for (std::size_t t = 0; t < w.size(); ++t) wy[t] += shift * w[t];
    auto row = Gm.apply_bra(wy);
    for (std::size_t j = 0; j < n_int; ++j) {
      ++compared;
      const Rational rhs = sign * row[j];
      if (lhs[j][i] != rhs) {
        rep.fail(entry_label(*basis, i, j) + ": lhs " + to_string(lhs[j][i]) + " rhs " + to_string(rhs));
        rep.max_residual = to_string(Rational(abs(lhs[j][i] - rhs)));
        return rep;
      }
    }
  }
  rep.param("entries", compared);
  return rep;
}

CheckReport eigenvalue_check(const Context& ctx, int max_weight, int max_charge, int max_k) {
  CheckReport rep;
  rep.check = "eigen";
  rep.param("max_weight", max_weight);
  rep.param("max_charge", max_charge);
  rep.param("max_k", max_k);
  long compared = 0;
  for (int s = -max_charge; s <= max_charge; ++s) {
    auto basis = make_basis(s, max_weight);
    std::vector<std::pair<std::string, FockOperatorQ>> ops;
    ops.emplace_back("J0", charge_operator(basis));
    ops.emplace_back("L0", energy_operator(basis));
    ops.emplace_back("W0", casimir_operator(basis));
    for (int k = -max_k; k <= max_k; ++k)
      if (k != 0) ops.emplace_back("H" + std::to_string(k), bilinear(ctx, basis, k, 0));
    for (const auto& [name, op] : ops) {
      for (std::size_t j = 0; j < basis->size(); ++j) {
        const Partition& lam = basis->state(j);
        Rational expected;
        if (name == "J0") {
          expected = s;
        } else if (name == "L0") {
          expected = Rational(lam.weight()) + Rational(s * (s + 1)) / 2;
        } else if (name == "W0") {
          expected = Rational(kappa(lam) + (2L * s + 1) * lam.weight()) + Rational(s * (s + 1) * (2 * s + 1)) / 6;
        } else {
          expected = phi(ctx, std::stoi(name.substr(1)), lam, s);
        }
        ++compared;
        for (const auto& [r, x] : op.column(j)) {
          const Rational want = r == j ? expected : Rational(0);
          if (x != want) {
            rep.fail(name + " at s=" + std::to_string(s) + " " + entry_label(*basis, r, j) + ": " + to_string(x) +
                     " vs " + to_string(want));
            return rep;
          }
        }
        if (op.entry(j, j) != expected) {
          rep.fail(name + " diagonal at s=" + std::to_string(s) + " " + lam.to_string());
          return rep;
        }
      }
    }
  }
  rep.param("entries", compared);
  return rep;
}

}  // namespace orbicrystal
