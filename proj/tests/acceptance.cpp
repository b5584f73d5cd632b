// One line per acceptance criterion. Exit status is nonzero if any criterion fails.
#include "orbicrystal/crystal.hpp"
#include "orbicrystal/fock.hpp"
#include "orbicrystal/tau.hpp"
#include "orbicrystal/toda.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace orbicrystal;

namespace {

constexpr double kApproxTolerance = 1e-20;  // criteria 5 and 6
constexpr double kProductSeconds = 10.0;     // criterion 1, per case
constexpr double kTheoremSeconds = 300.0;    // criterion 5
constexpr unsigned kApproxBits = 256;
constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = true;
  std::string note;
  void absorb(const CheckReport& r) {
    if (r.pass) return;
    if (pass) note = r.check + ": " + r.detail;
    pass = false;
  }
  void fail(const std::string& why) {
    if (pass) note = why;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Rational random_rational(std::mt19937_64& rng, bool nonzero_sign = true) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 9), sign(0, 1);
  Rational x = Rational(num(rng)) / den(rng);
  return (nonzero_sign && sign(rng)) ? -x : x;
}

// positive, != 1, so that no Kahler constant degenerates
Rational random_positive(std::mt19937_64& rng) {
  for (;;) {
    Rational x = random_rational(rng, false);
    if (x != 1) return x;
  }
}

void randomize(Context& ctx, std::mt19937_64& rng) {
  ctx.p.clear();
  ctx.r.clear();
  for (int i = 0; i < ctx.a; ++i) ctx.p.push_back(random_positive(rng));
  for (int j = 0; j < ctx.b; ++j) ctx.r.push_back(random_positive(rng));
  ctx.Q0 = random_positive(rng);
}

Outcome product_form() {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  double worst = 0;
  for (auto [a, b] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{1, 2}, std::pair{2, 3}}) {
    Context ctx = Context::make(a, b, Rational(1, 3));
    randomize(ctx, rng);
    ctx.q_degree = 6;
    for (auto m : {ModelKind::First, ModelKind::Second}) {
      const auto t0 = std::chrono::steady_clock::now();
      o.absorb(product_form_check(ctx, m));
      const double dt = seconds_since(t0);
      worst = std::max(worst, dt);
      if (dt > kProductSeconds) o.fail("runtime " + std::to_string(dt) + " s");
    }
  }
  if (o.pass) o.note = "slowest case " + std::to_string(worst) + " s";
  return o;
}

Outcome eigenvalues() {
  Outcome o;
  o.absorb(eigenvalue_check(Context::make(2, 1, Rational(1, 3)), 8, 2, 3));
  return o;
}

Outcome quantum_torus() {
  Outcome o;
  Context ctx = Context::make(1, 1, Rational(1, 3));
  ctx.fock_cutoff = 12;
  int n_checks = 0;
  for (int k = -2; k <= 2; ++k)
    for (int m = -2; m <= 2; ++m)
      for (int l = -2; l <= 2; ++l)
        for (int n = -2; n <= 2; ++n) {
          o.absorb(commutator_check(ctx, 0, k, m, l, n, 4, TorusConvention::Derived));
          ++n_checks;
        }
  if (o.pass) o.note = std::to_string(n_checks) + " commutators";
  return o;
}

Outcome shift_symmetries() {
  Outcome o;
  constexpr int margin = 4;
  int n_checks = 0;
  for (auto [a, b] : {std::pair{2, 1}, std::pair{2, 3}}) {
    Context ctx = Context::make(a, b, Rational(1, 3));
    ctx.fock_cutoff = 12;
    for (auto kind : {ShiftKind::I, ShiftKind::II, ShiftKind::III, ShiftKind::FracA, ShiftKind::FracB}) {
      for (int k = 1; k <= 3; ++k) {
        if (kind == ShiftKind::FracA || kind == ShiftKind::FracB) {
          o.absorb(shift_symmetry_check(ctx, kind, k, 0, margin));
          ++n_checks;
          continue;
        }
        for (int m = -2; m <= 2; ++m) {
          if (kind != ShiftKind::III && std::max({0, -m, m + k}) > margin) continue;
          o.absorb(shift_symmetry_check(ctx, kind, k, m, margin));
          ++n_checks;
        }
      }
    }
  }
  if (o.pass) o.note = std::to_string(n_checks) + " identities";
  return o;
}

Context tau_context() {
  Context ctx = Context::make(2, 1, Rational(1, 3));
  ctx.p = {Rational(3, 2), Rational(1)};
  ctx.q_degree = 3;
  ctx.jet_order = 1;
  ctx.jet_symbols = 2;
  ctx.precision_bits = kApproxBits;
  return ctx;
}

std::string residual_note(const std::vector<CheckReport>& reports) {
  std::ostringstream s;
  for (const auto& r : reports) {
    s << r.check << '[';
    for (std::size_t i = 0; i < r.residuals_by_cutoff.size(); ++i)
      s << (i ? " " : "") << "@" << r.residuals_by_cutoff[i].first << "=" << r.residuals_by_cutoff[i].second;
    s << "] ";
  }
  return s.str();
}

Outcome theorems() {
  Outcome o;
  const Context ctx = tau_context();
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<CheckReport> reports;
  for (int which : {1, 2})
    for (int s : {0, 1}) reports.push_back(theorem_check(ctx, which, s, {16, 24}, kApproxTolerance));
  for (const auto& r : reports) o.absorb(r);
  const double dt = seconds_since(t0);
  if (dt > kTheoremSeconds) o.fail("runtime " + std::to_string(dt) + " s");
  if (o.pass) o.note = std::to_string(dt) + " s; " + residual_note({reports.front()});
  return o;
}

Outcome both_ways() {
  Outcome o;
  const Context ctx = tau_context();
  std::vector<CheckReport> reports;
  for (int s : {0, 1}) reports.push_back(jg_gj_check(ctx, {1, 2}, s, 2, {16, 24}, kApproxTolerance));
  for (const auto& r : reports) o.absorb(r);
  if (o.pass) o.note = residual_note({reports.front()});
  return o;
}

Outcome lemmas() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 7);
  for (auto [a, b] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 3}}) {
    Context ctx = Context::make(a, b, Rational(1, 3));
    randomize(ctx, rng);
    const Rational u1 = random_rational(rng), v1 = random_rational(rng), w1 = random_rational(rng);
    o.absorb(gamma_conjugation_lemmas(ctx, u1, v1, w1, -8, 8));
  }
  return o;
}

Outcome factorization(ModelKind model) {
  Outcome o;
  std::mt19937_64 rng(kSeed + (model == ModelKind::First ? 11 : 13));
  for (auto [a, b] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 3}}) {
    Context ctx = Context::make(a, b, Rational(1, 3));
    randomize(ctx, rng);
    ctx.window_lo = -12;
    ctx.window_hi = 12;
    o.absorb(factorization_check(ctx, model));
  }
  return o;
}

Outcome u_factorization() {
  Outcome o;
  Context ctx = Context::make(2, 1, Rational(1, 3));
  ctx.p = {Rational(3, 2), Rational(1)};
  ctx.r = {Rational(4, 3)};
  ctx.Q0 = Rational(2, 5);
  ctx.window_lo = -6;
  ctx.window_hi = 6;
  ctx.precision_bits = kApproxBits;
  std::vector<CheckReport> reports;
  for (auto m : {ModelKind::First, ModelKind::Second}) reports.push_back(ufactor_check(ctx, m, {40, 80}));
  for (const auto& r : reports) o.absorb(r);
  if (o.pass) o.note = residual_note(reports);
  return o;
}

Outcome tangency() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 17);
  for (auto [a, b] : {std::pair{1, 1}, std::pair{2, 1}}) {
    Context ctx = Context::make(a, b, Rational(1, 3));
    randomize(ctx, rng);
    for (auto m : {ModelKind::First, ModelKind::Second}) o.absorb(tangency_check(ctx, m, a));
  }
  return o;
}

// s_lambda(q^{-rho/c}) from the hook-content formula in t = q^{1/c}
Rational fractional_principal(const Context& ctx, const Partition& l, int c) {
  const Partition conj = conjugate(l);
  long n = 0;
  for (int i = 1; i <= l.length(); ++i) n += static_cast<long>(i - 1) * l.part(i);
  Rational v = qpow(ctx, l.weight() + 2 * n, 2L * c);
  for (int i = 1; i <= l.length(); ++i)
    for (int j = 1; j <= l.part(i); ++j) v /= Rational(1) - qpow(ctx, l.part(i) - j + conj.part(j) - i + 1, c);
  return v;
}

Outcome two_q() {
  Outcome o;
  for (auto [a, b] : {std::pair{2, 1}, std::pair{2, 3}, std::pair{3, 2}}) {
    Context ctx = Context::make(a, b, Rational(1, 3));
    ctx.q_degree = 5;
    ctx.jet_symbols = 0;
    const auto [p, r] = two_q_preset(a, b, ctx);
    ctx.p = p;
    ctx.r = r;
    const auto z = z_series(ctx, ModelKind::First, 0);
    for (int m = 0; m <= 5; ++m) {
      Rational expect = 0;
      for (const auto& l : partitions_of(m)) expect += fractional_principal(ctx, l, a) * fractional_principal(ctx, l, b);
      if (z.series[m].constant_term() != expect)
        o.fail("(a,b)=(" + std::to_string(a) + "," + std::to_string(b) + ") Q^" + std::to_string(m));
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"product form (exact)", product_form},
      {"eigenvalues of J0, L0, W0, Hk (exact)", eigenvalues},
      {"quantum torus relations at D=12 (exact)", quantum_torus},
      {"shift symmetries at D=12 (exact)", shift_symmetries},
      {"Theorems 1 and 2, tol 1e-20, 10x decay 16->24", theorems},
      {"J g = g J both ways, tol 1e-20, 10x decay 16->24", both_ways},
      {"Gamma conjugation lemmas on [-8,8] (exact)", lemmas},
      {"Lax factorization, first model (exact)", [] { return factorization(ModelKind::First); }},
      {"Lax factorization, second model (exact)", [] { return factorization(ModelKind::Second); }},
      {"U factorization, 10x decay 40->80", u_factorization},
      {"tangency at k=a (exact)", tangency},
      {"two-q reduction (exact)", two_q},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %2zu: %s%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.note.empty() ? "" : " | ", o.note.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
