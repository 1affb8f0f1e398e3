#pragma once

#include <vector>

#include "dhk/errors.hpp"
#include "dhk/function.hpp"

namespace dhk {

enum class Parity { Even, Odd };  // cosh / sinh profile

// Exponential-hyperbolic solution of the free heat equation:
//   phi(x, tau) = cosh(b x) e^{b^2 tau}  (Even)  or  sinh(b x) e^{b^2 tau}  (Odd).
// x-derivatives of every order are closed-form: each derivative multiplies by b
// and flips the cosh/sinh profile.
class SeedFunction final : public DifferentiableFunction {
 public:
  SeedFunction(Parity parity, double wavenumber);

  // Exact d^order/dx^order phi(x, tau). Overflows double for b|x|+b^2 tau > ~700;
  // determinant code uses the scaled form below instead.
  double derivative(double x, double tau, int order) const override;

  // phi^{(order)} = bounded * exp(log_scale) with log_scale = b|x| + b^2 tau
  // independent of order, so one factor per Wronskian column covers every row.
  struct Scaled {
    double bounded;
    double log_scale;
  };
  Scaled scaled_derivative(double x, double tau, int order) const;

  Parity parity() const { return parity_; }
  double wavenumber() const { return b_; }

 private:
  Parity parity_;
  double b_;
};

// Value of d^order/dx^order phi at (x, tau); the seed evaluation entry point.
// order is capped at 8; higher orders are internal-only.
double seed_eval(const SeedFunction& seed, double x, double tau, int order);

// Ordered seed list phi_1..phi_N for an N-fold dressing. Wavenumbers must be
// strictly increasing and parities must alternate starting with Even, which
// keeps the Wronskian strictly positive (checked by sampling at construction).
class DressingChain {
 public:
  DressingChain() = default;  // N = 0, identity dressing
  explicit DressingChain(std::vector<SeedFunction> seeds);

  // The two-soliton chain behind the phi^4 kink fluctuation operator:
  // seeds cosh(mass/sqrt2 x), sinh(2 mass/sqrt2 x).
  static DressingChain kink(double mass);

  int size() const { return static_cast<int>(seeds_.size()); }
  const SeedFunction& seed(int k) const { return seeds_[static_cast<size_t>(k)]; }
  const std::vector<SeedFunction>& seeds() const { return seeds_; }
  DressingChain prefix(int count) const;

  double max_wavenumber() const;  // b_N, 0 for the empty chain
  double min_wavenumber() const;  // b_1, 0 for the empty chain

 private:
  std::vector<SeedFunction> seeds_;
};

}  // namespace dhk
