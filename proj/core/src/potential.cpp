#include "dhk/potential.hpp"

#include <utility>

#include "dhk/errors.hpp"
#include "dhk/wronskian.hpp"

namespace dhk {

double dressed_potential(const DressingChain& chain, double x) {
  if (chain.size() == 0) return 0.0;
  const auto r = wronskian_derivative_ratios(chain, x, 0.0, 2);
  return 2.0 * (r[2] - r[1] * r[1]);
}

PotentialField::PotentialField(DressingChain chain) : chain_(std::move(chain)) {}

double PotentialField::derivative(double x, int order) const {
  if (order < 0 || order > 2)
    throw DomainError("potential derivatives available up to order 2");
  if (chain_.size() == 0) return 0.0;
  const auto r = wronskian_derivative_ratios(chain_, x, 0.0, order + 2);
  const double r1 = r[1], r2 = r[2];
  switch (order) {
    case 0:
      return 2.0 * (r2 - r1 * r1);
    case 1:  // 2 (ln W)'''
      return 2.0 * (r[3] - 3.0 * r1 * r2 + 2.0 * r1 * r1 * r1);
    default: {  // 2 (ln W)''''
      const double r1s = r1 * r1;
      return 2.0 * (r[4] - 4.0 * r1 * r[3] - 3.0 * r2 * r2 +
                    12.0 * r1s * r2 - 6.0 * r1s * r1s);
    }
  }
}

}  // namespace dhk
