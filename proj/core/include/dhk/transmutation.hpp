#pragma once

#include <functional>
#include <memory>

#include "dhk/free_kernel.hpp"
#include "dhk/function.hpp"
#include "dhk/kink.hpp"
#include "dhk/seeds.hpp"

namespace dhk {

// Causal initial kernel rho0(x, y) = H(x - y) K(x, y) obtained by inverting the
// first-order factor chain backwards: the top factor gives
//   g_{N-1}(x, y) = phi_N[N-1](x) H(x-y) / phi_N[N-1](y),
// and each earlier factor is inverted with causal support as
//   g_{k-1}(x, y) = phi_k[k-1](x) H(x-y) int_y^x g_k(z, y) / phi_k[k-1](z) dz,
// ending at rho0 = g_0. The dressed seeds phi_k[k-1] are Wronskian ratios of
// consecutive chain prefixes at tau = 0 (strictly positive for valid chains).
// Applying the forward chain to rho0 returns delta(x - y): the (N-1)-th
// x-derivative of K jumps by exactly 1 across x = y.
class TriangularKernel {
 public:
  explicit TriangularKernel(DressingChain chain);  // needs N >= 1

  double operator()(double x, double y) const;     // 0 for x < y
  double smooth_factor(double x, double y) const;  // K, smooth through x = y

  // phi_{k+1}[k](x) at tau = 0, k = 0..N-1 (k = 0 is the bare first seed)
  double dressed_seed(int k, double x) const;

  const DressingChain& chain() const { return chain_; }
  double growth_rate() const { return chain_.max_wavenumber(); }

 private:
  double factor(int level, double x, double y) const;
  DressingChain chain_;
  std::vector<DressingChain> prefixes_;
};

// Operation form: rho0(x, y) for a freshly built kernel.
double initial_condition(const DressingChain& chain, double x, double y);

// Generic compact-support/bounded-growth initial data for propagation tests.
struct InitialProfile {
  std::function<double(double)> value;
  double support_lo;   // profile vanishes below (use -infinity if it doesn't)
  double support_hi;   // and above
  double growth_rate;  // |value(z)| <= C e^{growth_rate |z|}
};

// Free Gaussian propagation of initial data, with x-derivatives taken under
// the integral on the Gaussian factor (Hermite weights):
//   d^q/dx^q (1/(2 sqrt(pi tau))) int rho0(z, y) exp(-(x-z)^2/4tau) dz.
// The z-window is [y, max(x,y) + 2 b_N tau + 12 sqrt(tau)]; beyond it the
// Gaussian times the e^{b_N z} growth envelope is below double precision.
double free_propagate(const TriangularKernel& rho0, double tau, double x,
                      double y, int deriv_order = 0);
double free_propagate(const InitialProfile& rho0, double tau, double x,
                      int deriv_order = 0);
// Delta initial data propagates to the free kernel exactly; the delta is a
// symbolic case, never a narrow Gaussian.
double free_propagate_delta(double tau, double x, double y,
                            int deriv_order = 0);

// Full construction: dress the free-propagated triangular kernel in x. Solves
// the dressed heat equation with delta(x - y) initial data.
double dressed_kernel(const DressingChain& chain, double tau, double x,
                      double y);

// Uniform evaluator over the three kernel constructions.
class HeatKernel {
 public:
  enum class Kind { Free, DressedNumeric, ClosedFormKink };

  static HeatKernel free();
  static HeatKernel dressed(DressingChain chain);  // empty chain degrades to Free
  static HeatKernel closed_form_kink(double mass, KernelVariant variant);

  double value(double tau, double x, double y) const;
  double operator()(double tau, double x, double y) const {
    return value(tau, x, y);
  }
  // d^order/dx^order; Free supports order <= 12, DressedNumeric <= 4,
  // ClosedFormKink <= 2. All derivatives are analytic, never finite differences.
  double derivative(double tau, double x, double y, int order) const;

  Kind kind() const { return kind_; }
  int dressing_order() const;  // N (2 for the closed-form kink)
  const DressingChain& chain() const { return chain_; }

 private:
  HeatKernel() = default;
  Kind kind_ = Kind::Free;
  DressingChain chain_;
  std::shared_ptr<const TriangularKernel> rho0_;
  std::shared_ptr<const ClosedFormKernel> closed_;
};

}  // namespace dhk
