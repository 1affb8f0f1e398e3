#pragma once

#include <functional>

#include "dhk/kink.hpp"
#include "dhk/transmutation.hpp"

namespace dhk {

// Subtracted heat trace gamma(t) = e^{-shift t} int (G - G0)(x, x, t) dx by
// adaptive quadrature over |x| <= 40/b_min. Only the difference is integrated;
// the divergent free part never enters. Fails above 1e-9 relative.
double trace_numeric(const HeatKernel& kernel, double t, double shift);

enum class TraceSource { ClosedForm, NumericDiagonal };

// gamma(t) with the two asymptotic coefficients the Mellin quadrature needs:
// gamma ~ c_half sqrt(t) as t -> 0 and gamma ~ A e^{-delta_inf t} as t -> inf.
class HeatTrace {
 public:
  static HeatTrace closed_form(double mass, double shift, KernelVariant variant);
  // Any dressed kernel (the PDE-valid family); its bound-state wavenumbers set
  // both asymptotic coefficients.
  static HeatTrace numeric_diagonal(HeatKernel kernel, double shift);

  double operator()(double t) const { return gamma_(t); }
  double small_t_coefficient() const { return c_half_; }
  double tail_rate() const { return delta_inf_; }
  double shift() const { return shift_; }
  TraceSource source() const { return source_; }

 private:
  HeatTrace() = default;
  std::function<double(double)> gamma_;
  double c_half_ = 0.0;
  double delta_inf_ = 0.0;
  double shift_ = 0.0;
  TraceSource source_ = TraceSource::ClosedForm;
};

struct ZetaResult {
  double zeta0;           // evaluated near s = 0 (should vanish)
  double zeta_prime0;
  double s_q;             // -zeta_prime0 by construction
  double mass_scale;
  double error_estimate;  // quadrature estimate plus tail truncation bound
};

// zeta(s) = M^{2s} int_0^inf gamma(t) t^{s-1} dt / Gamma(s). The integral is
// split at t = 1: below, t = u^2 with the c_half sqrt(t) part integrated in
// closed form (c_half/(s + 1/2)); above, adaptive quadrature truncated where
// e^{-delta_inf t} < 1e-16, with the dropped tail added to the error estimate.
double zeta_function(const HeatTrace& trace, double s, double mass_scale);

// zeta'(0) by the reduced integral int_0^inf gamma(t) t^{-1} dt: since the
// trace-subtracted zeta has no pole at s = 0, zeta(0) = 0 and the Gamma-factor
// expansion collapses to this single Mellin value (which is also why the
// result cannot depend on the scale M).
ZetaResult quantum_correction(const HeatTrace& trace, double mass_scale);

}  // namespace dhk
