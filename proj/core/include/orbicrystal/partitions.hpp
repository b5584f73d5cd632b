#pragma once

#include "orbicrystal/scalars.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace orbicrystal {

// Weakly decreasing positive parts; the empty list is the empty partition.
class Partition {
 public:
  Partition() = default;
  // Accepts trailing zeros and strips them; throws on increasing or negative parts.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int weight() const { return weight_; }
  bool empty() const { return parts_.empty(); }
  // 1-based part, zero beyond the length
  int part(int i) const { return i >= 1 && i <= length() ? parts_[static_cast<std::size_t>(i - 1)] : 0; }

  // mu is contained in this diagram
  bool contains(const Partition& mu) const;

  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition& x, const Partition& y) { return x.parts_ <=> y.parts_; }

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const noexcept;
};

// All partitions of n in lexicographic order of their part lists.
std::vector<Partition> partitions_of(int n);
// All partitions of weight <= max_weight, graded, then lexicographic.
std::vector<Partition> enumerate(int max_weight);

Partition conjugate(const Partition& lambda);

// sum_i lambda_i (lambda_i - 2i + 1)
long kappa(const Partition& lambda);

// Phi_k(lambda, s); k != 0, any integer s.
Rational phi(const Context& ctx, int k, const Partition& lambda, int s);

}  // namespace orbicrystal
