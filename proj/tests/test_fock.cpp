#include "orbicrystal/fock.hpp"

#include <doctest.h>

using namespace orbicrystal;

namespace {

bool same_operator(const FockOperatorQ& x, const FockOperatorQ& y) {
  const auto n = x.basis()->size();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (x.entry(i, j) != y.entry(i, j)) return false;
  return true;
}

}  // namespace

TEST_CASE("basis sizes and ordering") {
  auto basis = make_basis(1, 6);
  CHECK(basis->size() == enumerate(6).size());
  CHECK(basis->index(Partition({3, 2})) >= 0);
  CHECK(basis->index(Partition({7})) == -1);
  for (int d = 0; d <= 6; ++d)
    for (std::size_t i = basis->weight_begin(d); i < basis->weight_end(d); ++i) CHECK(basis->weight(i) == d);
}

TEST_CASE("Maya diagrams") {
  const Partition l({2, 1});
  CHECK(maya::modes(l, 0, 4) == std::vector<int>{2, 0, -2, -3});
  CHECK(maya::occupied(l, 0, 2));
  CHECK_FALSE(maya::occupied(l, 0, 1));
  for (const auto& mu : enumerate(6))
    for (int s = -2; s <= 2; ++s) CHECK(maya::from_modes(maya::modes(mu, s, mu.length() + 3), s) == mu);
  // psi_{-1} fills the hole at 1: |(2,1),0> -> |(2,2),1> up to sign
  auto r = maya::create(l, 0, 1);
  REQUIRE(r.has_value());
  CHECK(r->charge == 1);
  CHECK(maya::modes(r->state, 1, 3) == std::vector<int>{2, 1, 0});
  CHECK_FALSE(maya::create(l, 0, 2).has_value());
  CHECK_FALSE(maya::annihilate(l, 0, 1).has_value());
}

TEST_CASE("diagonal operators match their closed forms") {
  Context ctx = Context::make(2, 1, Rational(1, 3));
  const auto rep = eigenvalue_check(ctx, 6, 2, 3);
  CHECK_MESSAGE(rep.pass, rep.detail);
}

TEST_CASE("Gamma from skew Schur functions equals Gamma from currents") {
  Context ctx = Context::make(1, 1, Rational(1, 2));
  auto basis = make_basis(0, 7);
  CurrentTables tables(basis, 7);
  const Specialization spec = Specialization::principal(ctx, {Rational(2, 3)});
  for (auto sign : {GammaSign::Minus, GammaSign::Plus})
    for (bool primed : {false, true})
      for (bool inverse : {false, true})
        CHECK(same_operator(gamma(ctx, basis, sign, primed, spec, inverse),
                            gamma_from_currents(ctx, tables, sign, primed, spec, inverse)));
}

TEST_CASE("Gamma_- times its inverse is the identity on the truncation") {
  Context ctx = Context::make(1, 1, Rational(1, 2));
  auto basis = make_basis(0, 6);
  const std::vector<Rational> x{Rational(1, 2), Rational(-2)};
  const auto g = gamma(ctx, basis, GammaSign::Minus, false, x);
  const auto gi = gamma(ctx, basis, GammaSign::Minus, false, x, true);
  for (std::size_t j = 0; j < basis->size(); ++j) {
    std::vector<Rational> e(basis->size(), Rational(0));
    e[j] = 1;
    const auto v = g.apply(gi.apply(e));
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == (i == j ? 1 : 0));
  }
}

TEST_CASE("quantum torus relation") {
  Context ctx = Context::make(1, 1, Rational(1, 2));
  ctx.fock_cutoff = 8;
  for (int k = -1; k <= 1; ++k)
    for (int m = -1; m <= 1; ++m)
      for (int l = -1; l <= 1; ++l)
        for (int n = -1; n <= 1; ++n) {
          const auto rep = commutator_check(ctx, 0, k, m, l, n, 3);
          CHECK_MESSAGE(rep.pass, rep.detail);
        }
}

TEST_CASE("a doubled exponent in the k+l=0 coefficient does not hold") {
  Context ctx = Context::make(1, 1, Rational(1, 2));
  ctx.fock_cutoff = 8;
  CHECK(commutator_check(ctx, 0, 1, 1, -1, 0, 3, TorusConvention::Derived).pass);
  CHECK_FALSE(commutator_check(ctx, 0, 1, 1, -1, 0, 3, TorusConvention::Literal).pass);
}

TEST_CASE("shift symmetries at small cutoff") {
  Context ctx = Context::make(2, 1, Rational(1, 2));
  ctx.fock_cutoff = 8;
  for (auto kind : {ShiftKind::I, ShiftKind::II, ShiftKind::III, ShiftKind::FracA, ShiftKind::FracB}) {
    const auto rep = shift_symmetry_check(ctx, kind, 1, 0, 3);
    CHECK_MESSAGE(rep.pass, (std::string(shift_kind_name(kind)) + ": " + rep.detail));
  }
  CHECK_THROWS_AS(shift_symmetry_check(ctx, ShiftKind::I, 2, 2, 1), PreconditionError);
  CHECK(parse_shift_kind("frac_a") == ShiftKind::FracA);
}
