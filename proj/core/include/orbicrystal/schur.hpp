#pragma once

#include "orbicrystal/partitions.hpp"
#include "orbicrystal/scalars.hpp"

#include <vector>

namespace orbicrystal {

// Union over scales x_i of the geometric sequences x_i*first*ratio^n, n >= 0.
// The principal case x_i q^{-rho} has first = q^{1/2} and ratio = q.
struct Specialization {
  std::vector<Rational> scales;
  Rational first;
  Rational ratio;

  static Specialization principal(const Context& ctx, std::vector<Rational> scales);
  Specialization scaled(const Rational& c) const;
  // Requires matching first and ratio.
  Specialization joined(const Specialization& other) const;
};

// Fraction-free (Bareiss) determinant with row pivoting.
Rational determinant(std::vector<std::vector<Rational>> m);

// h_0..h_{n_max} of a finite variable list.
std::vector<Rational> h_values(const std::vector<Rational>& x, int n_max);
std::vector<Rational> h_values(const Context& ctx, const Specialization& spec, int n_max);

// det(h_{lambda_i - mu_j - i + j}); zero unless mu is inside lambda.
Rational skew_from_h(const Partition& lambda, const Partition& mu, const std::vector<Rational>& h);

// Memoizes h-values for one specialization.
class SchurEvaluator {
 public:
  SchurEvaluator(const Context& ctx, Specialization spec);
  const Rational& h(int n);
  Rational schur(const Partition& lambda);
  Rational skew(const Partition& lambda, const Partition& mu);
  const Specialization& specialization() const { return spec_; }

 private:
  void extend(int n);
  Context ctx_;
  Specialization spec_;
  std::vector<Rational> h_;
};

Rational schur(const Context& ctx, const Partition& lambda, const Specialization& spec);
Rational skew_schur(const Context& ctx, const Partition& lambda, const Partition& mu,
                    const std::vector<Rational>& x);
Rational skew_schur(const Context& ctx, const Partition& lambda, const Partition& mu,
                    const Specialization& spec);
Rational powersum(const Context& ctx, int k, const Specialization& spec);

}  // namespace orbicrystal
