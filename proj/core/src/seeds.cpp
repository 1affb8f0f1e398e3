#include "dhk/seeds.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "dhk/wronskian.hpp"

namespace dhk {

namespace {

double int_pow(double base, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

}  // namespace

SeedFunction::SeedFunction(Parity parity, double wavenumber)
    : parity_(parity), b_(wavenumber) {
  if (!(b_ > 0.0))
    throw DomainError("seed wavenumber must be positive, got " +
                      std::to_string(wavenumber));
}

double SeedFunction::derivative(double x, double tau, int order) const {
  if (order < 0) throw DomainError("negative derivative order");
  const bool even = (parity_ == Parity::Even) == (order % 2 == 0);
  const double profile = even ? std::cosh(b_ * x) : std::sinh(b_ * x);
  return int_pow(b_, order) * profile * std::exp(b_ * b_ * tau);
}

SeedFunction::Scaled SeedFunction::scaled_derivative(double x, double tau,
                                                     int order) const {
  if (order < 0) throw DomainError("negative derivative order");
  // cosh(bx) = e^{b|x|}(1 + q)/2, sinh(bx) = sign(x) e^{b|x|}(1 - q)/2
  const double ax = std::abs(x);
  const double q = std::exp(-2.0 * b_ * ax);
  const bool even = (parity_ == Parity::Even) == (order % 2 == 0);
  double bounded;
  if (even) {
    bounded = 0.5 * (1.0 + q);
  } else {
    const double sign = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    bounded = sign * 0.5 * (1.0 - q);
  }
  return {bounded * int_pow(b_, order), b_ * ax + b_ * b_ * tau};
}

double seed_eval(const SeedFunction& seed, double x, double tau, int order) {
  if (order < 0 || order > 8)
    throw DomainError("seed_eval derivative order must be in [0, 8]");
  return seed.derivative(x, tau, order);
}

DressingChain::DressingChain(std::vector<SeedFunction> seeds)
    : seeds_(std::move(seeds)) {
  for (size_t k = 0; k < seeds_.size(); ++k) {
    const Parity expected = (k % 2 == 0) ? Parity::Even : Parity::Odd;
    if (seeds_[k].parity() != expected)
      throw DomainError("chain parities must alternate cosh, sinh, cosh, ... "
                        "(violated at seed " + std::to_string(k + 1) + ")");
    if (k > 0 && !(seeds_[k - 1].wavenumber() < seeds_[k].wavenumber()))
      throw DomainError("chain wavenumbers must be strictly increasing "
                        "(violated at seed " + std::to_string(k + 1) + ")");
  }
  if (!seeds_.empty()) {
    // belt check: the structural rules above should force W > 0 everywhere
    const double b1 = seeds_.front().wavenumber();
    for (double scale : {0.0, 0.5, 2.0, 10.0, 50.0}) {
      for (double sign : {1.0, -1.0}) {
        const LogWronskian w = log_wronskian(*this, sign * scale / b1, 0.0);
        if (!(w.sign > 0.0))
          throw DegenerateWronskian("chain Wronskian not positive at x = " +
                                    std::to_string(sign * scale / b1));
      }
    }
  }
}

DressingChain DressingChain::kink(double mass) {
  if (!(mass > 0.0))
    throw DomainError("kink mass must be positive, got " + std::to_string(mass));
  const double kappa = mass / std::sqrt(2.0);
  return DressingChain({SeedFunction(Parity::Even, kappa),
                        SeedFunction(Parity::Odd, 2.0 * kappa)});
}

DressingChain DressingChain::prefix(int count) const {
  if (count < 0 || count > size())
    throw DomainError("prefix length out of range");
  return DressingChain(std::vector<SeedFunction>(seeds_.begin(),
                                                 seeds_.begin() + count));
}

double DressingChain::max_wavenumber() const {
  return seeds_.empty() ? 0.0 : seeds_.back().wavenumber();
}

double DressingChain::min_wavenumber() const {
  return seeds_.empty() ? 0.0 : seeds_.front().wavenumber();
}

}  // namespace dhk
