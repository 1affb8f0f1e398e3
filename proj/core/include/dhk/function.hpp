#pragma once

#include <functional>
#include <utility>

namespace dhk {

// A function of (x, tau) exposing exact x-derivatives. The dressing determinant
// machinery consumes these as the extra Wronskian column.
class DifferentiableFunction {
 public:
  virtual ~DifferentiableFunction() = default;

  // d^order/dx^order at (x, tau); order = 0 is the value.
  virtual double derivative(double x, double tau, int order) const = 0;

  double operator()(double x, double tau) const { return derivative(x, tau, 0); }
};

class ConstantFunction final : public DifferentiableFunction {
 public:
  explicit ConstantFunction(double value) : value_(value) {}
  double derivative(double, double, int order) const override {
    return order == 0 ? value_ : 0.0;
  }

 private:
  double value_;
};

// Adapter for test probes with hand-supplied derivatives.
class CallableFunction final : public DifferentiableFunction {
 public:
  using Eval = std::function<double(double x, double tau, int order)>;
  explicit CallableFunction(Eval eval) : eval_(std::move(eval)) {}
  double derivative(double x, double tau, int order) const override {
    return eval_(x, tau, order);
  }

 private:
  Eval eval_;
};

}  // namespace dhk
