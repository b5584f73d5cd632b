#include "orbicrystal/schur.hpp"

#include <doctest.h>

#include <functional>
#include <map>

using namespace orbicrystal;

namespace {

// Brute-force sum over semistandard fillings of lambda/mu with entries 1..n.
Rational ssyt_sum(const Partition& lambda, const Partition& mu, const std::vector<Rational>& x) {
  std::vector<std::pair<int, int>> cells;
  for (int i = 1; i <= lambda.length(); ++i)
    for (int j = mu.part(i) + 1; j <= lambda.part(i); ++j) cells.emplace_back(i, j);
  std::map<std::pair<int, int>, int> fill;
  const int n = static_cast<int>(x.size());
  Rational total = 0;
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t idx, Rational w) {
    if (idx == cells.size()) {
      total += w;
      return;
    }
    const auto [i, j] = cells[idx];
    int lo = 1;
    auto left = fill.find({i, j - 1});
    if (left != fill.end()) lo = std::max(lo, left->second);
    auto up = fill.find({i - 1, j});
    if (up != fill.end()) lo = std::max(lo, up->second + 1);
    for (int v = lo; v <= n; ++v) {
      fill[{i, j}] = v;
      rec(idx + 1, w * x[static_cast<std::size_t>(v - 1)]);
    }
    fill.erase({i, j});
  };
  rec(0, Rational(1));
  return total;
}

// s_lambda(x q^{1/2}, x q^{3/2}, ...) by the hook-content formula
Rational hook_content(const Context& ctx, const Partition& l, const Rational& x) {
  const Partition c = conjugate(l);
  long n = 0;
  for (int i = 1; i <= l.length(); ++i) n += static_cast<long>(i - 1) * l.part(i);
  Rational v = ipow(x, l.weight()) * qpow(ctx, 2 * n + l.weight(), 2);
  for (int i = 1; i <= l.length(); ++i)
    for (int j = 1; j <= l.part(i); ++j) v /= Rational(1) - qpow(ctx, l.part(i) - j + c.part(j) - i + 1);
  return v;
}

}  // namespace

TEST_CASE("skew Schur matches semistandard tableaux") {
  Context ctx = Context::make(1, 1, Rational(1, 2));
  const std::vector<Rational> x{Rational(1, 2), Rational(-3, 5), Rational(2), Rational(1, 7)};
  for (const auto& lambda : enumerate(5)) {
    for (const auto& mu : enumerate(lambda.weight())) {
      if (!lambda.contains(mu)) {
        CHECK(skew_schur(ctx, lambda, mu, x) == 0);
        continue;
      }
      CHECK(skew_schur(ctx, lambda, mu, x) == ssyt_sum(lambda, mu, x));
    }
  }
}

TEST_CASE("principal specialization matches the hook-content formula") {
  Context ctx = Context::make(2, 1, Rational(1, 3));
  for (const Rational& x : {Rational(1), Rational(-2, 3), Rational(5, 2)}) {
    SchurEvaluator ev(ctx, Specialization::principal(ctx, {x}));
    for (const auto& l : enumerate(7)) CHECK(ev.schur(l) == hook_content(ctx, l, x));
  }
}

TEST_CASE("union of specializations branches through skew functions") {
  Context ctx = Context::make(1, 2, Rational(1, 2));
  const Specialization A = Specialization::principal(ctx, {Rational(3, 2)});
  const Specialization B = Specialization::principal(ctx, {Rational(-1, 3)});
  const Specialization AB = A.joined(B);
  SchurEvaluator ea(ctx, A), eb(ctx, B), eab(ctx, AB);
  for (const auto& l : enumerate(5)) {
    Rational sum = 0;
    for (const auto& mu : enumerate(l.weight()))
      if (l.contains(mu)) sum += ea.schur(mu) * eb.skew(l, mu);
    CHECK(eab.schur(l) == sum);
  }
}

TEST_CASE("power sums of the principal specialization") {
  Context ctx = Context::make(1, 1, Rational(1, 3));
  const Specialization A = Specialization::principal(ctx, {Rational(2), Rational(1, 5)});
  for (int k = 1; k <= 5; ++k) {
    const Rational expect =
        (ipow(Rational(2), k) + ipow(Rational(1, 5), k)) * qpow(ctx, k, 2) / (Rational(1) - qpow(ctx, k));
    CHECK(powersum(ctx, k, A) == expect);
  }
}

TEST_CASE("Bareiss determinant") {
  std::vector<std::vector<Rational>> m{{Rational(0), Rational(1), Rational(2)},
                                       {Rational(3), Rational(4), Rational(5)},
                                       {Rational(6), Rational(7), Rational(9)}};
  CHECK(determinant(m) == -3);
}
