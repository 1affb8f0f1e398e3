#pragma once

#include <string>
#include <vector>

namespace dhk {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;  // measured numbers; failures name the offending quantity
  double seconds;
};

// Runs every oracle and invariant check over the construction at the given
// mass: dressing identities, heat-equation residuals and delta limits, the
// finite-difference oracle adjudication, closed-form/numeric cross checks,
// bound-state spectrum, heat trace asymptotics, the zeta pipeline, and the
// semigroup/symmetry properties. Checks never throw; exceptions are converted
// into failed results. Sample points and tolerances assume mass near 1.
std::vector<CheckResult> run_validation_suite(double mass = 1.0);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace dhk
