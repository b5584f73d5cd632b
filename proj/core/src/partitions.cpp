#include "orbicrystal/partitions.hpp"

#include <functional>

namespace orbicrystal {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw ConfigError("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw ConfigError("partition parts must be weakly decreasing");
    weight_ += parts_[i];
  }
}

bool Partition::contains(const Partition& mu) const {
  if (mu.length() > length()) return false;
  for (int i = 1; i <= mu.length(); ++i)
    if (mu.part(i) > part(i)) return false;
  return true;
}

std::string Partition::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts_[i]);
  }
  return out + ")";
}

std::size_t PartitionHash::operator()(const Partition& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int x : p.parts()) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

void generate(int remaining, int max_part, std::vector<int>& current, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  // ascending first part keeps the list in lexicographic order
  for (int first = 1; first <= std::min(remaining, max_part); ++first) {
    current.push_back(first);
    generate(remaining - first, first, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw ConfigError("negative weight");
  std::vector<Partition> out;
  std::vector<int> current;
  generate(n, n, current, out);
  return out;
}

std::vector<Partition> enumerate(int max_weight) {
  if (max_weight < 0) throw ConfigError("max_weight must be nonnegative");
  std::vector<Partition> out;
  for (int d = 0; d <= max_weight; ++d) {
    auto layer = partitions_of(d);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

Partition conjugate(const Partition& lambda) {
  std::vector<int> cols;
  if (!lambda.empty()) {
    cols.assign(static_cast<std::size_t>(lambda.part(1)), 0);
    for (int x : lambda.parts())
      for (int j = 0; j < x; ++j) ++cols[static_cast<std::size_t>(j)];
  }
  return Partition(cols);
}

long kappa(const Partition& lambda) {
  long k = 0;
  for (int i = 1; i <= lambda.length(); ++i) {
    const long li = lambda.part(i);
    k += li * (li - 2L * i + 1);
  }
  return k;
}

Rational phi(const Context& ctx, int k, const Partition& lambda, int s) {
  if (k == 0) throw PreconditionError("phi: k must be nonzero");
  Rational sum = 0;
  for (int i = 1; i <= lambda.length(); ++i) {
    sum += qpow(ctx, static_cast<long>(k) * (lambda.part(i) + s - i + 1)) -
           qpow(ctx, static_cast<long>(k) * (s - i + 1));
  }
  const Rational qk = qpow(ctx, k);
  sum += qk * (1 - qpow(ctx, static_cast<long>(k) * s)) / (1 - qk);
  sum.canonicalize();
  return sum;
}

}  // namespace orbicrystal
