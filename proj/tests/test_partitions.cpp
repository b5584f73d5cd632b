#include "orbicrystal/partitions.hpp"

#include <doctest.h>

#include <set>

using namespace orbicrystal;

namespace {

// p(n) by the coin-change recurrence
std::vector<long> partition_counts(int nmax) {
  std::vector<long> p(static_cast<std::size_t>(nmax + 1), 0);
  p[0] = 1;
  for (int part = 1; part <= nmax; ++part)
    for (int n = part; n <= nmax; ++n) p[static_cast<std::size_t>(n)] += p[static_cast<std::size_t>(n - part)];
  return p;
}

long content_sum(const Partition& l) {
  long c = 0;
  for (int i = 1; i <= l.length(); ++i)
    for (int j = 1; j <= l.part(i); ++j) c += j - i;
  return c;
}

}  // namespace

TEST_CASE("partition counts follow the recurrence") {
  const auto p = partition_counts(14);
  long total = 0;
  for (int n = 0; n <= 14; ++n) {
    const auto parts = partitions_of(n);
    CHECK(static_cast<long>(parts.size()) == p[static_cast<std::size_t>(n)]);
    std::set<Partition> unique(parts.begin(), parts.end());
    CHECK(unique.size() == parts.size());
    for (const auto& l : parts) CHECK(l.weight() == n);
    total += p[static_cast<std::size_t>(n)];
  }
  CHECK(static_cast<long>(enumerate(14).size()) == total);
}

TEST_CASE("enumerate is graded") {
  const auto all = enumerate(6);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].weight() <= all[i].weight());
  CHECK(all.front().empty());
}

TEST_CASE("conjugation is an involution preserving weight") {
  for (const auto& l : enumerate(9)) {
    const Partition c = conjugate(l);
    CHECK(c.weight() == l.weight());
    CHECK(conjugate(c) == l);
    CHECK(c.length() == l.part(1));
  }
  CHECK(conjugate(Partition({3, 1})) == Partition({2, 1, 1}));
}

TEST_CASE("kappa is twice the content sum and odd under conjugation") {
  for (const auto& l : enumerate(9)) {
    CHECK(kappa(l) == 2 * content_sum(l));
    CHECK(kappa(conjugate(l)) == -kappa(l));
  }
  CHECK(kappa(Partition({2})) == 2);
}

TEST_CASE("partition validation") {
  CHECK_THROWS(Partition({1, 2}));
  CHECK_THROWS(Partition({2, -1}));
  CHECK(Partition({2, 1, 0, 0}) == Partition({2, 1}));
  CHECK(Partition({3, 2}).contains(Partition({2, 2})));
  CHECK_FALSE(Partition({3, 1}).contains(Partition({2, 2})));
}
