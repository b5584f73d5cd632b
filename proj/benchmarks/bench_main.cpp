#include "orbicrystal/crystal.hpp"
#include "orbicrystal/fock.hpp"
#include "orbicrystal/tau.hpp"
#include "orbicrystal/toda.hpp"

#include <benchmark/benchmark.h>

using namespace orbicrystal;

static void BM_ZSeries(benchmark::State& state) {
  Context ctx = Context::make(2, 1, Rational(1, 3));
  ctx.p = {Rational(3, 2), Rational(1)};
  ctx.q_degree = static_cast<int>(state.range(0));
  ctx.jet_order = 1;
  ctx.jet_symbols = 2;
  for (auto _ : state) benchmark::DoNotOptimize(z_series(ctx, ModelKind::First, 0));
}
BENCHMARK(BM_ZSeries)->Arg(3)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

static void BM_ProductSeries(benchmark::State& state) {
  Context ctx = Context::make(2, 3, Rational(1, 3));
  ctx.q_degree = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(product_series(ctx, ModelKind::Second));
}
BENCHMARK(BM_ProductSeries)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_BandProduct(benchmark::State& state) {
  Context ctx = Context::make(2, 1, Rational(1, 3));
  const int h = static_cast<int>(state.range(0));
  const BandQ gm = gamma_matrix(ctx, -h, h, GammaSign::Minus, false, Rational(2, 3));
  const BandQ gp = gamma_matrix(ctx, -h, h, GammaSign::Plus, true, Rational(5, 4));
  for (auto _ : state) benchmark::DoNotOptimize(gp * gm);
}
BENCHMARK(BM_BandProduct)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_Factorization(benchmark::State& state) {
  Context ctx = Context::make(2, 1, Rational(1, 3));
  ctx.p = {Rational(3, 2), Rational(1)};
  ctx.r = {Rational(4, 3)};
  ctx.Q0 = Rational(2, 5);
  for (auto _ : state) benchmark::DoNotOptimize(factorization_check(ctx, ModelKind::First));
}
BENCHMARK(BM_Factorization)->Unit(benchmark::kMillisecond);

static void BM_Commutator(benchmark::State& state) {
  Context ctx = Context::make(1, 1, Rational(1, 3));
  ctx.fock_cutoff = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(commutator_check(ctx, 0, 1, 1, 2, -1, 4));
}
BENCHMARK(BM_Commutator)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_Theorem1(benchmark::State& state) {
  Context ctx = Context::make(2, 1, Rational(1, 3));
  ctx.p = {Rational(3, 2), Rational(1)};
  ctx.q_degree = 3;
  ctx.jet_symbols = 2;
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(theorem_check(ctx, 1, 0, {d / 2, d}, 1e-10));
}
BENCHMARK(BM_Theorem1)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_MAIN();
