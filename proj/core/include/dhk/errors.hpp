#pragma once

#include <stdexcept>
#include <string>

namespace dhk {

// Argument outside an operation's stated domain (bad parity/ordering, tau <= 0, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Seed Wronskian underflowed relative to its row norms; the chain is unusable.
class DegenerateWronskian : public std::runtime_error {
 public:
  explicit DegenerateWronskian(const std::string& what) : std::runtime_error(what) {}
};

// An adaptive integral finished with an error estimate above the caller's bound.
class QuadratureFailure : public std::runtime_error {
 public:
  QuadratureFailure(const std::string& what, double estimate, double bound)
      : std::runtime_error(what + " (error estimate " + std::to_string(estimate) +
                           " exceeds bound " + std::to_string(bound) + ")"),
        estimate_(estimate),
        bound_(bound) {}
  double estimate() const { return estimate_; }
  double bound() const { return bound_; }

 private:
  double estimate_;
  double bound_;
};

// Time stepping grew faster than the continuum bound allows; grid is mis-scaled.
class StabilityError : public std::runtime_error {
 public:
  explicit StabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Successive grid refinements failed to settle.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dhk
