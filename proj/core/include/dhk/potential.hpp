#pragma once

#include "dhk/seeds.hpp"

namespace dhk {

// Dressed potential u[N](x) = 2 d^2/dx^2 ln W[phi_1..phi_N] at tau = 0 (the
// e^{b^2 tau} column factors drop out of the log second derivative).
// Computed from exact row-differentiated Wronskians, not finite differences.
double dressed_potential(const DressingChain& chain, double x);

// u[N] with its first two x-derivatives, via the log-derivative cumulants of W.
class PotentialField {
 public:
  explicit PotentialField(DressingChain chain);

  double operator()(double x) const { return derivative(x, 0); }
  double derivative(double x, int order) const;  // order <= 2

  const DressingChain& chain() const { return chain_; }

 private:
  DressingChain chain_;
};

}  // namespace dhk
