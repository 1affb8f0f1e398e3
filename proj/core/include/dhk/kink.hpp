#pragma once

namespace dhk {

// The printed two-soliton kernel omits e^{b_m^2 tau} growth factors on the
// bound-state terms; both readings are shipped and the PDE oracle adjudicates
// (ExpCorrected is the one that solves the heat equation).
enum class KernelVariant { ExpCorrected, AsPrinted };

// Bound state of the two-fold dressed operator -d^2/dx^2 - u[2],
// u[2] = 6 kappa^2 sech^2(kappa x), kappa = mass/sqrt(2):
//   psi_1 = sech(kappa x) tanh(kappa x)   (odd,  wavenumber b_1 = kappa)
//   psi_2 = sech^2(kappa x)               (even, wavenumber b_2 = 2 kappa)
// weight = 1/||psi||^2 for the canonical profiles; the product
// weight * psi(x) * psi(y) is normalization-invariant.
class BoundState {
 public:
  BoundState(int index, double mass);

  double value(double x) const { return derivative(x, 0); }
  double derivative(double x, int order) const;  // analytic, order <= 2

  int index() const { return index_; }
  double wavenumber() const { return b_; }
  double weight() const { return weight_; }
  double mass() const { return mass_; }

 private:
  int index_;
  double mass_;
  double kappa_;
  double b_;
  double weight_;
};

// Convenience matching the operation signature: (value, weight, wavenumber).
struct BoundStateSample {
  double value;
  double weight;
  double wavenumber;
};
BoundStateSample bound_state(int index, double x, double mass);

// Closed-form kink heat kernel:
//   G0(tau,x,y) + (1/2) sum_m w_m(tau) rho_m psi_m(x) psi_m(y)
//                 [Erf((x-y+2 b_m tau)/(2 sqrt tau)) - Erf((x-y-2 b_m tau)/(2 sqrt tau))]
// with w_m = e^{b_m^2 tau} (ExpCorrected) or 1 (AsPrinted).
class ClosedFormKernel {
 public:
  ClosedFormKernel(double mass, KernelVariant variant);

  double value(double tau, double x, double y) const;
  double derivative_x(double tau, double x, double y, int order) const;  // <= 2

  double mass() const { return mass_; }
  KernelVariant variant() const { return variant_; }

 private:
  double bound_term(double tau, double x, double y, const BoundState& s,
                    int order) const;
  double mass_;
  KernelVariant variant_;
  BoundState s1_;
  BoundState s2_;
};

double kink_kernel(double tau, double x, double y, double mass,
                   KernelVariant variant);

// Subtracted heat trace in closed form:
//   gamma(t) = e^{-shift t} sum_m w_m(t) erf(b_m sqrt t),
// the x-integral of the kernel coincidence-limit difference (the bound-state
// norms cancel against the weights).
double heat_trace_closed(double t, double mass, double shift,
                         KernelVariant variant);

}  // namespace dhk
