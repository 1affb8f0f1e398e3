#include "dhk/free_kernel.hpp"

#include <cmath>

#include "dhk/errors.hpp"

namespace dhk {

namespace {

constexpr int kMaxDerivOrder = 12;

// physicists' Hermite polynomial H_k(w) via the three-term recurrence
double hermite(int k, double w) {
  double hm = 1.0;
  if (k == 0) return hm;
  double h = 2.0 * w;
  for (int i = 1; i < k; ++i) {
    const double hn = 2.0 * w * h - 2.0 * i * hm;
    hm = h;
    h = hn;
  }
  return h;
}

}  // namespace

double free_heat_kernel(double tau, double x, double y, int deriv_order) {
  if (!(tau > 0.0)) throw DomainError("free kernel needs tau > 0");
  if (deriv_order < 0 || deriv_order > kMaxDerivOrder)
    throw DomainError("free kernel derivative order must be in [0, 12]");
  const double s = 2.0 * std::sqrt(tau);  // d^k/dx^k e^{-w^2} = (-1/s)^k H_k(w) e^{-w^2}
  const double w = (x - y) / s;
  const double g = std::exp(-w * w) / (s * std::sqrt(M_PI));
  if (deriv_order == 0) return g;
  double factor = 1.0;
  for (int i = 0; i < deriv_order; ++i) factor *= -1.0 / s;
  return factor * hermite(deriv_order, w) * g;
}

GaussianSolution::GaussianSolution(double center, double t0)
    : center_(center), t0_(t0) {
  if (!(t0 > 0.0)) throw DomainError("GaussianSolution needs t0 > 0");
}

double GaussianSolution::derivative(double x, double tau, int order) const {
  return free_heat_kernel(t0_ + tau, x, center_, order);
}

}  // namespace dhk
