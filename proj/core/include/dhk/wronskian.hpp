#pragma once

#include <array>

#include "dhk/function.hpp"
#include "dhk/seeds.hpp"

namespace dhk {

// W = sign * exp(log_value); usable where W itself would overflow (b x > ~700).
struct LogWronskian {
  double log_value;
  double sign;
};

// Wronskian W[phi_1..phi_N](x, tau): determinant of the matrix whose row i holds
// the i-th x-derivatives of the seeds, i = 0..N-1. Empty chain gives 1.
// Throws DegenerateWronskian if the determinant underflows against its row norms.
double wronskian(const DressingChain& chain, double x, double tau);
LogWronskian log_wronskian(const DressingChain& chain, double x, double tau);

// W[phi_1..phi_N, extra]: one more column and one more derivative row.
// `extra` must supply derivatives up to order N. A zero result is legitimate
// (the dressing annihilates its own seeds); only the seed block is checked for
// degeneracy.
double wronskian(const DressingChain& chain, double x, double tau,
                 const DifferentiableFunction& extra);

// Dressed function rho[N] = W[phi_1..phi_N, rho] / W[phi_1..phi_N].
// Evaluated with per-column exponential scaling so the ratio stays finite for
// any |x|. Empty chain returns rho unchanged.
double dress_function(const DressingChain& chain,
                      const DifferentiableFunction& rho, double x, double tau);

// d^order/dx^order of dress_function (order <= 4), computed from
// row-differentiated determinants, never by finite differences. `rho` must
// supply derivatives up to order N + order.
double dress_function_derivative(const DressingChain& chain,
                                 const DifferentiableFunction& rho, double x,
                                 double tau, int order);

// Ratios W^(k)/W for k = 0..max_order (max_order <= 4), where W^(k) is the k-th
// x-derivative of the Wronskian expanded by multilinearity into determinants
// with bumped derivative rows. Exponential column scales cancel exactly.
std::array<double, 5> wronskian_derivative_ratios(const DressingChain& chain,
                                                  double x, double tau,
                                                  int max_order);

}  // namespace dhk
