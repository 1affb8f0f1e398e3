#include "dhk/wronskian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace dhk {

namespace {

constexpr double kDegeneracyFloor = 1e-13;

using RowSet = std::vector<int>;

// Multilinearity in the rows: d/dx det(rows) = sum_i det(rows with row_i + 1),
// dropping terms where the bumped order collides with an existing row.
// Returns the row sets (kept sorted) and integer coefficients of the q-th
// derivative of det(base).
std::vector<std::pair<RowSet, double>> derivative_row_sets(const RowSet& base,
                                                           int q) {
  std::map<RowSet, double> terms{{base, 1.0}};
  for (int step = 0; step < q; ++step) {
    std::map<RowSet, double> next;
    for (const auto& [rows, coeff] : terms) {
      for (size_t i = 0; i < rows.size(); ++i) {
        // rows are sorted and strictly increasing, so a +1 bump can only
        // collide with the immediate successor
        if (i + 1 < rows.size() && rows[i] + 1 == rows[i + 1])
          continue;  // duplicate row, determinant vanishes
        RowSet bumped = rows;
        bumped[i] += 1;
        next[bumped] += coeff;
      }
    }
    terms = std::move(next);
  }
  return {terms.begin(), terms.end()};
}

// LU determinant with partial pivoting; destroys `a` (row-major n x n).
double lu_det(std::vector<double>& a, int n) {
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(a[static_cast<size_t>(k) * n + k]);
    for (int i = k + 1; i < n; ++i) {
      const double cand = std::abs(a[static_cast<size_t>(i) * n + k]);
      if (cand > best) {
        best = cand;
        pivot = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (pivot != k) {
      for (int j = 0; j < n; ++j)
        std::swap(a[static_cast<size_t>(k) * n + j],
                  a[static_cast<size_t>(pivot) * n + j]);
      det = -det;
    }
    const double akk = a[static_cast<size_t>(k) * n + k];
    det *= akk;
    for (int i = k + 1; i < n; ++i) {
      const double f = a[static_cast<size_t>(i) * n + k] / akk;
      for (int j = k + 1; j < n; ++j)
        a[static_cast<size_t>(i) * n + j] -= f * a[static_cast<size_t>(k) * n + j];
    }
  }
  return det;
}

// Determinant of the scaled seed matrix over the given derivative rows, with an
// optional extra column of extra->derivative(...)/extra_scale entries. The true
// determinant is the returned value times exp(sum_k b_k|x| + b_k^2 tau) times
// extra_scale. If hadamard is non-null it receives the product of row 2-norms
// of the scaled matrix (for the degeneracy test).
double scaled_det(const DressingChain& chain, double x, double tau,
                  const RowSet& rows, const DifferentiableFunction* extra,
                  double extra_scale, double* hadamard = nullptr) {
  const int cols = chain.size() + (extra ? 1 : 0);
  const int n = static_cast<int>(rows.size());
  std::vector<double> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < chain.size(); ++k)
      a[static_cast<size_t>(i) * n + k] =
          chain.seed(k).scaled_derivative(x, tau, rows[static_cast<size_t>(i)])
              .bounded;
    if (extra)
      a[static_cast<size_t>(i) * n + (cols - 1)] =
          extra->derivative(x, tau, rows[static_cast<size_t>(i)]) / extra_scale;
  }
  if (hadamard) {
    double prod = 1.0;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        const double e = a[static_cast<size_t>(i) * n + j];
        s += e * e;
      }
      prod *= std::sqrt(s);
    }
    *hadamard = prod;
  }
  return lu_det(a, n);
}

RowSet iota_rows(int n) {
  RowSet rows(static_cast<size_t>(n));
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

double column_log_scale(const DressingChain& chain, double x, double tau) {
  double total = 0.0;
  for (const SeedFunction& s : chain.seeds())
    total += s.wavenumber() * std::abs(x) +
             s.wavenumber() * s.wavenumber() * tau;
  return total;
}

// Scaled seed-block determinant with the degeneracy check applied.
double checked_seed_det(const DressingChain& chain, double x, double tau) {
  double hadamard = 0.0;
  const double det =
      scaled_det(chain, x, tau, iota_rows(chain.size()), nullptr, 1.0, &hadamard);
  if (!(std::abs(det) > kDegeneracyFloor * hadamard))
    throw DegenerateWronskian(
        "seed Wronskian underflowed against row norms at x = " +
        std::to_string(x));
  return det;
}

double extra_column_scale(const DifferentiableFunction& extra, double x,
                          double tau, int max_order) {
  double scale = 0.0;
  for (int o = 0; o <= max_order; ++o)
    scale = std::max(scale, std::abs(extra.derivative(x, tau, o)));
  return scale;
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double wronskian(const DressingChain& chain, double x, double tau) {
  if (chain.size() == 0) return 1.0;
  return checked_seed_det(chain, x, tau) * std::exp(column_log_scale(chain, x, tau));
}

LogWronskian log_wronskian(const DressingChain& chain, double x, double tau) {
  if (chain.size() == 0) return {0.0, 1.0};
  const double det = checked_seed_det(chain, x, tau);
  return {std::log(std::abs(det)) + column_log_scale(chain, x, tau),
          det > 0.0 ? 1.0 : -1.0};
}

double wronskian(const DressingChain& chain, double x, double tau,
                 const DifferentiableFunction& extra) {
  if (chain.size() == 0) return extra.derivative(x, tau, 0);
  checked_seed_det(chain, x, tau);
  const double scale = extra_column_scale(extra, x, tau, chain.size());
  if (scale == 0.0) return 0.0;
  const double det =
      scaled_det(chain, x, tau, iota_rows(chain.size() + 1), &extra, scale);
  return scale * det * std::exp(column_log_scale(chain, x, tau));
}

double dress_function(const DressingChain& chain,
                      const DifferentiableFunction& rho, double x, double tau) {
  return dress_function_derivative(chain, rho, x, tau, 0);
}

double dress_function_derivative(const DressingChain& chain,
                                 const DifferentiableFunction& rho, double x,
                                 double tau, int order) {
  if (order < 0 || order > 4)
    throw DomainError("dress_function_derivative supports orders 0..4");
  const int n = chain.size();
  if (n == 0) return rho.derivative(x, tau, order);

  const double scale = extra_column_scale(rho, x, tau, n + order);
  // numerator rows 0..N with the extra column, denominator rows 0..N-1
  const RowSet num_base = iota_rows(n + 1);
  const RowSet den_base = iota_rows(n);

  std::vector<double> F(static_cast<size_t>(order) + 1, 0.0);
  std::vector<double> G(static_cast<size_t>(order) + 1, 0.0);
  double hadamard = 0.0;
  G[0] = scaled_det(chain, x, tau, den_base, nullptr, 1.0, &hadamard);
  if (!(std::abs(G[0]) > kDegeneracyFloor * hadamard))
    throw DegenerateWronskian(
        "seed Wronskian underflowed against row norms at x = " +
        std::to_string(x));
  if (scale == 0.0) return 0.0;

  for (int q = 0; q <= order; ++q) {
    for (const auto& [rows, coeff] : derivative_row_sets(num_base, q))
      F[static_cast<size_t>(q)] +=
          coeff * scaled_det(chain, x, tau, rows, &rho, scale);
    if (q > 0)
      for (const auto& [rows, coeff] : derivative_row_sets(den_base, q))
        G[static_cast<size_t>(q)] +=
            coeff * scaled_det(chain, x, tau, rows, nullptr, 1.0);
  }

  // R = F_true/G_true; F_true^(q) = sum_j C(q,j) R^(j) G_true^(q-j) solved for
  // R^(q). The shared exp column scale cancels; `scale` re-enters linearly.
  std::vector<double> R(static_cast<size_t>(order) + 1, 0.0);
  for (int q = 0; q <= order; ++q) {
    double acc = scale * F[static_cast<size_t>(q)];
    for (int j = 0; j < q; ++j)
      acc -= binom(q, j) * R[static_cast<size_t>(j)] *
             G[static_cast<size_t>(q - j)];
    R[static_cast<size_t>(q)] = acc / G[0];
  }
  return R[static_cast<size_t>(order)];
}

std::array<double, 5> wronskian_derivative_ratios(const DressingChain& chain,
                                                  double x, double tau,
                                                  int max_order) {
  if (max_order < 0 || max_order > 4)
    throw DomainError("wronskian_derivative_ratios supports orders 0..4");
  std::array<double, 5> r{1.0, 0.0, 0.0, 0.0, 0.0};
  if (chain.size() == 0) return r;
  const RowSet base = iota_rows(chain.size());
  double hadamard = 0.0;
  const double w0 = scaled_det(chain, x, tau, base, nullptr, 1.0, &hadamard);
  if (!(std::abs(w0) > kDegeneracyFloor * hadamard))
    throw DegenerateWronskian(
        "seed Wronskian underflowed against row norms at x = " +
        std::to_string(x));
  for (int q = 1; q <= max_order; ++q) {
    double acc = 0.0;
    for (const auto& [rows, coeff] : derivative_row_sets(base, q))
      acc += coeff * scaled_det(chain, x, tau, rows, nullptr, 1.0);
    r[static_cast<size_t>(q)] = acc / w0;
  }
  return r;
}

}  // namespace dhk
