#pragma once

#include "dhk/function.hpp"

namespace dhk {

// G0(tau, x, y) = exp(-(x-y)^2 / 4tau) / (2 sqrt(pi tau)) and its x-derivatives
// (Hermite-polynomial weights). deriv_order up to 12; tau must be positive.
double free_heat_kernel(double tau, double x, double y, int deriv_order = 0);

// Exact free-heat solution used as a probe: value(x, tau) = G0(tau + t0, x, center),
// a Gaussian of variance 2(t0 + tau) around `center`.
class GaussianSolution final : public DifferentiableFunction {
 public:
  GaussianSolution(double center, double t0);
  double derivative(double x, double tau, int order) const override;
  double center() const { return center_; }
  double t0() const { return t0_; }

 private:
  double center_;
  double t0_;
};

}  // namespace dhk
