#include "dhk/transmutation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "dhk/errors.hpp"
#include "dhk/quadrature.hpp"
#include "dhk/wronskian.hpp"

namespace dhk {

namespace {

// Sum adaptive integrals over consecutive breakpoints and enforce a combined
// 1e-10 relative error bound. Sub-spans can cancel for odd Gaussian
// derivatives, so on a failed first pass retry with an absolute tolerance tied
// to the combined value before giving up.
template <class F>
double checked_piecewise(const F& f, const std::vector<double>& pts,
                         const char* what) {
  auto run = [&](double abs_tol, double rel_tol) {
    double value = 0.0, err = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      const QuadratureResult r =
          integrate(f, pts[i], pts[i + 1], rel_tol, abs_tol);
      value += r.value;
      err += r.error_estimate;
    }
    return std::pair<double, double>{value, err};
  };
  auto [value, err] = run(0.0, 1e-11);
  double bound = 1e-10 * (std::abs(value) + 1e-300);
  if (err > bound) {
    std::tie(value, err) = run(0.25 * bound, 1e-12);
    bound = 1e-10 * (std::abs(value) + 1e-300);
    if (err > bound) throw QuadratureFailure(what, err, bound);
  }
  return value;
}

// Memoizes derivative orders at a fixed evaluation point; the dressing
// determinant expansion asks for the same column entry many times.
class PropagatedInitial final : public DifferentiableFunction {
 public:
  PropagatedInitial(const TriangularKernel& rho0, double y)
      : rho0_(&rho0), y_(y) {}

  double derivative(double x, double tau, int order) const override {
    if (x != key_x_ || tau != key_tau_) {
      key_x_ = x;
      key_tau_ = tau;
      cache_.assign(cache_.size(), std::nullopt);
    }
    if (order >= static_cast<int>(cache_.size()))
      cache_.resize(static_cast<size_t>(order) + 1);
    auto& slot = cache_[static_cast<size_t>(order)];
    if (!slot) slot = free_propagate(*rho0_, tau, x, y_, order);
    return *slot;
  }

 private:
  const TriangularKernel* rho0_;
  double y_;
  mutable double key_x_ = std::numeric_limits<double>::quiet_NaN();
  mutable double key_tau_ = std::numeric_limits<double>::quiet_NaN();
  mutable std::vector<std::optional<double>> cache_;
};

}  // namespace

TriangularKernel::TriangularKernel(DressingChain chain)
    : chain_(std::move(chain)) {
  if (chain_.size() < 1)
    throw DomainError("triangular initial kernel needs a non-empty chain");
  prefixes_.reserve(static_cast<size_t>(chain_.size()));
  for (int k = 0; k < chain_.size(); ++k)
    prefixes_.push_back(chain_.prefix(k));
}

double TriangularKernel::dressed_seed(int k, double x) const {
  if (k < 0 || k >= chain_.size())
    throw DomainError("dressed seed index out of range");
  const double value =
      dress_function(prefixes_[static_cast<size_t>(k)], chain_.seed(k), x, 0.0);
  if (!(value > 0.0))
    throw DegenerateWronskian("dressed seed " + std::to_string(k + 1) +
                              " lost positivity at x = " + std::to_string(x));
  return value;
}

double TriangularKernel::factor(int level, double x, double y) const {
  const double top = dressed_seed(level, x);
  if (level == chain_.size() - 1) return top / dressed_seed(level, y);
  const auto integrand = [&](double z) {
    return factor(level + 1, z, y) / dressed_seed(level, z);
  };
  return top * integrate_checked(integrand, y, x, 1e-11, 1e-10,
                                 "initial kernel inversion integral");
}

double TriangularKernel::smooth_factor(double x, double y) const {
  return factor(0, x, y);
}

double TriangularKernel::operator()(double x, double y) const {
  if (x < y) return 0.0;
  return smooth_factor(x, y);
}

double initial_condition(const DressingChain& chain, double x, double y) {
  return TriangularKernel(chain)(x, y);
}

double free_propagate(const TriangularKernel& rho0, double tau, double x,
                      double y, int deriv_order) {
  if (!(tau > 0.0))
    throw DomainError("free propagation needs tau > 0");
  const double hi =
      std::max(x, y) + 2.0 * rho0.growth_rate() * tau + 12.0 * std::sqrt(tau);
  std::vector<double> pts{y};
  if (x > y && x < hi) pts.push_back(x);  // Gaussian peak; keep it on a seam
  pts.push_back(hi);
  const auto integrand = [&](double z) {
    return rho0.smooth_factor(z, y) * free_heat_kernel(tau, x, z, deriv_order);
  };
  return checked_piecewise(integrand, pts, "free propagation integral");
}

double free_propagate(const InitialProfile& rho0, double tau, double x,
                      int deriv_order) {
  if (!(tau > 0.0))
    throw DomainError("free propagation needs tau > 0");
  const double reach = 2.0 * rho0.growth_rate * tau + 12.0 * std::sqrt(tau);
  const double lo = std::max(rho0.support_lo, x - reach);
  const double hi = std::min(rho0.support_hi, x + reach);
  if (!(hi > lo)) return 0.0;
  std::vector<double> pts{lo};
  if (x > lo && x < hi) pts.push_back(x);
  pts.push_back(hi);
  const auto integrand = [&](double z) {
    return rho0.value(z) * free_heat_kernel(tau, x, z, deriv_order);
  };
  return checked_piecewise(integrand, pts, "free propagation integral");
}

double free_propagate_delta(double tau, double x, double y, int deriv_order) {
  return free_heat_kernel(tau, x, y, deriv_order);
}

double dressed_kernel(const DressingChain& chain, double tau, double x,
                      double y) {
  if (chain.size() == 0) return free_heat_kernel(tau, x, y);
  const TriangularKernel rho0(chain);
  const PropagatedInitial propagated(rho0, y);
  return dress_function(chain, propagated, x, tau);
}

HeatKernel HeatKernel::free() { return HeatKernel(); }

HeatKernel HeatKernel::dressed(DressingChain chain) {
  HeatKernel k;
  if (chain.size() == 0) return k;  // no dressing steps: plain Gaussian
  k.kind_ = Kind::DressedNumeric;
  k.rho0_ = std::make_shared<const TriangularKernel>(chain);
  k.chain_ = std::move(chain);
  return k;
}

HeatKernel HeatKernel::closed_form_kink(double mass, KernelVariant variant) {
  HeatKernel k;
  k.kind_ = Kind::ClosedFormKink;
  k.chain_ = DressingChain::kink(mass);
  k.closed_ = std::make_shared<const ClosedFormKernel>(mass, variant);
  return k;
}

double HeatKernel::value(double tau, double x, double y) const {
  return derivative(tau, x, y, 0);
}

double HeatKernel::derivative(double tau, double x, double y, int order) const {
  switch (kind_) {
    case Kind::Free:
      return free_heat_kernel(tau, x, y, order);
    case Kind::ClosedFormKink:
      return order == 0 ? closed_->value(tau, x, y)
                        : closed_->derivative_x(tau, x, y, order);
    case Kind::DressedNumeric: {
      const PropagatedInitial propagated(*rho0_, y);
      return dress_function_derivative(chain_, propagated, x, tau, order);
    }
  }
  throw DomainError("unknown kernel kind");
}

int HeatKernel::dressing_order() const { return chain_.size(); }

}  // namespace dhk
