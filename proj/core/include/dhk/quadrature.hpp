#pragma once

#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "dhk/errors.hpp"

namespace dhk {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // conservative: |K15 - G7| summed over panels
  int panels = 0;
};

namespace quad_detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1] (QUADPACK dqk15 constants).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
inline void gk15(const F& f, double a, double b, double& value, double& error) {
  const double c = 0.5 * (a + b);
  const double hl = 0.5 * (b - a);
  const double fc = f(c);
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = hl * kXgk[j];
    const double fsum = f(c - dx) + f(c + dx);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  value = resk * hl;
  error = std::abs((resk - resg) * hl);
  // never report an estimate below double roundoff of the panel value
  const double floor = 2.3e-16 * std::abs(value);
  if (error < floor) error = floor;
}

struct Panel {
  double a, b, value, error;
  std::int64_t id;  // insertion order; deterministic tie-break
};
struct PanelLess {
  bool operator()(const Panel& l, const Panel& r) const {
    if (l.error != r.error) return l.error < r.error;
    return l.id > r.id;
  }
};

}  // namespace quad_detail

// Globally adaptive Gauss-Kronrod integration: repeatedly bisects the panel with
// the largest error estimate until sum(err) <= max(abs_tol, rel_tol*|value|) or
// the panel budget runs out. The estimate is returned either way; callers decide
// what estimate is acceptable (see integrate_checked).
template <class F>
QuadratureResult integrate(const F& f, double a, double b, double rel_tol = 1e-11,
                           double abs_tol = 0.0, int max_panels = 2000) {
  if (a == b) return {0.0, 0.0, 0};
  if (a > b) {
    QuadratureResult r = integrate(f, b, a, rel_tol, abs_tol, max_panels);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<quad_detail::Panel, std::vector<quad_detail::Panel>,
                      quad_detail::PanelLess>
      queue;
  std::int64_t next_id = 0;
  double total = 0.0, total_err = 0.0;

  auto push = [&](double lo, double hi) {
    quad_detail::Panel p{lo, hi, 0.0, 0.0, next_id++};
    quad_detail::gk15(f, lo, hi, p.value, p.error);
    total += p.value;
    total_err += p.error;
    queue.push(p);
  };
  push(a, b);

  int panels = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) &&
         panels < max_panels) {
    quad_detail::Panel worst = queue.top();
    queue.pop();
    total -= worst.value;
    total_err -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // panel narrower than double spacing
      total += worst.value;
      total_err += worst.error;
      queue.push(worst);
      break;
    }
    push(worst.a, mid);
    push(mid, worst.b);
    ++panels;
  }

  // re-sum in deterministic panel order to shed accumulated cancellation
  std::vector<quad_detail::Panel> rest;
  rest.reserve(queue.size());
  while (!queue.empty()) {
    rest.push_back(queue.top());
    queue.pop();
  }
  total = 0.0;
  total_err = 0.0;
  for (const auto& p : rest) {
    total += p.value;
    total_err += p.error;
  }
  return {total, total_err, panels};
}

// Integrate and throw QuadratureFailure unless the final error estimate is within
// fail_rel of the result's magnitude.
template <class F>
double integrate_checked(const F& f, double a, double b, double rel_tol,
                         double fail_rel, const char* what,
                         int max_panels = 2000) {
  const QuadratureResult r = integrate(f, a, b, rel_tol, 0.0, max_panels);
  const double bound = fail_rel * (std::abs(r.value) + 1e-300);
  if (r.error_estimate > bound)
    throw QuadratureFailure(what, r.error_estimate, bound);
  return r.value;
}

}  // namespace dhk
