#include "dhk/pde_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "dhk/errors.hpp"
#include "dhk/quadrature.hpp"

namespace dhk {

namespace {

double grid_norm(const std::vector<double>& v, double h) {
  double s = 0.0;
  for (double a : v) s += a * a;
  return std::sqrt(h * s);
}

// Tridiagonal solve with partial pivoting (one fill-in superdiagonal).
// a = subdiagonal (a[0] unused), b = diagonal, c = superdiagonal (c[m-1] unused).
std::vector<double> tridiag_solve_pivot(const std::vector<double>& a,
                                        const std::vector<double>& b,
                                        const std::vector<double>& c,
                                        std::vector<double> r) {
  const size_t m = b.size();
  std::vector<double> al(b), be(m, 0.0), ga(m, 0.0);
  for (size_t i = 0; i + 1 < m; ++i) be[i] = c[i];
  for (size_t i = 0; i + 1 < m; ++i) {
    double sub = a[i + 1];
    if (std::abs(sub) > std::abs(al[i])) {
      std::swap(al[i], sub);
      std::swap(be[i], al[i + 1]);
      std::swap(ga[i], be[i + 1]);
      std::swap(r[i], r[i + 1]);
    }
    if (al[i] == 0.0) al[i] = 1e-300;
    const double f = sub / al[i];
    al[i + 1] -= f * be[i];
    be[i + 1] -= f * ga[i];
    r[i + 1] -= f * r[i];
  }
  if (al[m - 1] == 0.0) al[m - 1] = 1e-300;
  std::vector<double> x(m);
  x[m - 1] = r[m - 1] / al[m - 1];
  if (m >= 2) x[m - 2] = (r[m - 2] - be[m - 2] * x[m - 1]) / al[m - 2];
  for (size_t ii = m; ii-- > 2;) {
    const size_t i = ii - 2;
    x[i] = (r[i] - be[i] * x[i + 1] - ga[i] * x[i + 2]) / al[i];
  }
  return x;
}

// Eigenvalue count below lambda for the symmetric tridiagonal matrix with the
// given diagonal and constant offdiagonal (Sturm sequence).
int sturm_count_below(const std::vector<double>& diag, double offdiag,
                      double lambda) {
  const double e2 = offdiag * offdiag;
  int count = 0;
  double q = 1.0;
  for (size_t i = 0; i < diag.size(); ++i) {
    q = diag[i] - lambda - (i ? e2 / q : 0.0);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

// k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
double bisect_eigenvalue(const std::vector<double>& diag, double offdiag, int k) {
  double lo = diag[0], hi = diag[0];
  for (double d : diag) {
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  lo -= 2.0 * std::abs(offdiag);
  hi += 2.0 * std::abs(offdiag);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid))) break;
    if (sturm_count_below(diag, offdiag, mid) >= k + 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> interior_diagonal(const PotentialField& potential,
                                      const Grid1D& grid) {
  const int n = grid.nodes();
  std::vector<double> d(static_cast<size_t>(n) - 2);
  const double two_h2 = 2.0 / (grid.h * grid.h);
  for (int i = 1; i < n - 1; ++i)
    d[static_cast<size_t>(i) - 1] = two_h2 - potential(grid.x(i));
  return d;
}

std::vector<double> lowest_eigenvalues(const std::vector<double>& diag,
                                       double offdiag, int count) {
  std::vector<double> vals(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k)
    vals[static_cast<size_t>(k)] = bisect_eigenvalue(diag, offdiag, k);
  return vals;
}

}  // namespace

int Grid1D::nodes() const {
  return static_cast<int>(std::llround((x_max - x_min) / h)) + 1;
}

int Grid1D::index_of(double xq) const {
  const int i = static_cast<int>(std::llround((xq - x_min) / h));
  if (i < 0 || i >= nodes() || std::abs(x(i) - xq) > 0.25 * h)
    throw DomainError("query point " + std::to_string(xq) +
                      " is not a grid node");
  return i;
}

void Grid1D::validate() const {
  if (!(h > 0.0) || !(dtau > 0.0) || !(x_max > x_min))
    throw DomainError("grid needs h > 0, dtau > 0 and a nonempty span");
  const double steps = (x_max - x_min) / h;
  if (std::abs(steps - std::llround(steps)) > 1e-6)
    throw DomainError("grid span must be an integral number of spacings");
}

std::vector<double> gaussian_profile(const Grid1D& grid, double center,
                                     double sigma) {
  if (!(sigma > 0.0)) throw DomainError("gaussian_profile needs sigma > 0");
  const int n = grid.nodes();
  std::vector<double> v(static_cast<size_t>(n));
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  for (int i = 0; i < n; ++i) {
    const double w = (grid.x(i) - center) / sigma;
    v[static_cast<size_t>(i)] = norm * std::exp(-0.5 * w * w);
  }
  return v;
}

std::vector<double> evolve(const std::vector<double>& potential_on_grid,
                           const std::vector<double>& initial, double tau_final,
                           const Grid1D& grid) {
  grid.validate();
  const int n = grid.nodes();
  if (static_cast<int>(potential_on_grid.size()) != n ||
      static_cast<int>(initial.size()) != n)
    throw DomainError("grid function length does not match the grid");
  if (!(tau_final > 0.0)) throw DomainError("evolve needs tau_final > 0");

  const long long steps =
      std::max<long long>(1, std::llround(tau_final / grid.dtau));
  const double dt = tau_final / static_cast<double>(steps);
  double u_max = 0.0;
  for (double u : potential_on_grid) u_max = std::max(u_max, u);
  if (0.5 * dt * u_max >= 0.99)
    throw StabilityError("time step too coarse for the potential magnitude");
  const double growth_bound = std::exp((u_max + 1.0) * dt) * (1.0 + 1e-12);

  const int m = n - 2;  // interior unknowns
  const double alpha = dt / (2.0 * grid.h * grid.h);

  // constant-in-time Crank-Nicolson system; factor the LHS once
  std::vector<double> diag(static_cast<size_t>(m)), cp(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i)
    diag[static_cast<size_t>(i)] =
        1.0 + 2.0 * alpha -
        0.5 * dt * potential_on_grid[static_cast<size_t>(i) + 1];
  cp[0] = -alpha / diag[0];
  for (int i = 1; i < m; ++i)
    cp[static_cast<size_t>(i)] =
        -alpha / (diag[static_cast<size_t>(i)] +
                  alpha * cp[static_cast<size_t>(i) - 1]);

  std::vector<double> rho(initial), rhs(static_cast<size_t>(m));
  rho.front() = 0.0;
  rho.back() = 0.0;
  double norm_prev = grid_norm(rho, grid.h);
  for (long long s = 0; s < steps; ++s) {
    for (int i = 0; i < m; ++i) {
      const size_t j = static_cast<size_t>(i) + 1;
      rhs[static_cast<size_t>(i)] =
          (1.0 - 2.0 * alpha + 0.5 * dt * potential_on_grid[j]) * rho[j] +
          alpha * (rho[j - 1] + rho[j + 1]);
    }
    // Thomas sweep against the cached factorization
    rhs[0] /= diag[0];
    for (int i = 1; i < m; ++i)
      rhs[static_cast<size_t>(i)] =
          (rhs[static_cast<size_t>(i)] + alpha * rhs[static_cast<size_t>(i) - 1]) /
          (diag[static_cast<size_t>(i)] + alpha * cp[static_cast<size_t>(i) - 1]);
    for (int i = m - 2; i >= 0; --i)
      rhs[static_cast<size_t>(i)] -=
          cp[static_cast<size_t>(i)] * rhs[static_cast<size_t>(i) + 1];
    for (int i = 0; i < m; ++i) rho[static_cast<size_t>(i) + 1] = rhs[static_cast<size_t>(i)];

    const double norm_now = grid_norm(rho, grid.h);
    if (norm_now > growth_bound * norm_prev)
      throw StabilityError("norm grew by " + std::to_string(norm_now / norm_prev) +
                           " in one step against bound " +
                           std::to_string(growth_bound));
    norm_prev = norm_now;
  }
  return rho;
}

std::vector<double> evolve(const PotentialField& potential,
                           const std::vector<double>& initial, double tau_final,
                           const Grid1D& grid) {
  grid.validate();
  if (std::abs(potential(grid.x_min)) > 1e-8 ||
      std::abs(potential(grid.x_max)) > 1e-8)
    throw DomainError("potential has not decayed at the domain ends");
  const int n = grid.nodes();
  std::vector<double> u(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) u[static_cast<size_t>(i)] = potential(grid.x(i));
  return evolve(u, initial, tau_final, grid);
}

OracleComparison compare_with_oracle(const HeatKernel& kernel,
                                     const PotentialField& potential, double tau,
                                     double x, double y, const Grid1D& grid) {
  const double sigma = 2.0 * grid.h;
  const std::vector<double> sol =
      evolve(potential, gaussian_profile(grid, y, sigma), tau, grid);
  const double numeric = sol[static_cast<size_t>(grid.index_of(x))];

  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
  const auto f = [&](double z) {
    const double w = (z - y) / sigma;
    return kernel.value(tau, x, z) * norm * std::exp(-0.5 * w * w);
  };
  const double analytic = integrate_checked(f, y - 12.0 * sigma, y + 12.0 * sigma,
                                            1e-9, 1e-7, "oracle convolution");
  return {numeric, analytic, numeric - analytic};
}

double kernel_residual(const HeatKernel& kernel, const PotentialField& potential,
                       const std::vector<KernelPoint>& samples) {
  double worst = 0.0;
  for (const KernelPoint& p : samples) {
    if (!(p.tau >= 0.05))
      throw DomainError("residual samples need tau >= 0.05");
    const double dt = 0.003 * p.tau;
    const double rho_tau =
        (kernel.value(p.tau - 2.0 * dt, p.x, p.y) -
         8.0 * kernel.value(p.tau - dt, p.x, p.y) +
         8.0 * kernel.value(p.tau + dt, p.x, p.y) -
         kernel.value(p.tau + 2.0 * dt, p.x, p.y)) /
        (12.0 * dt);
    const double rho = kernel.value(p.tau, p.x, p.y);
    const double rho_xx = kernel.derivative(p.tau, p.x, p.y, 2);
    worst = std::max(worst,
                     std::abs(-rho_tau + rho_xx + potential(p.x) * rho));
  }
  return worst;
}

std::vector<KernelPoint> residual_sample_grid(double kappa) {
  if (!(kappa > 0.0)) throw DomainError("residual samples need kappa > 0");
  const double taus[] = {0.1, 0.3, 1.0};
  const double pts[][2] = {{0.0, 0.0}, {0.7, -0.4}, {1.6, 0.5}, {-1.2, 0.9}};
  std::vector<KernelPoint> out;
  for (double t : taus)
    for (const auto& p : pts)
      out.push_back({t, p[0] / kappa, p[1] / kappa});
  return out;
}

EigenSolution bound_spectrum(const PotentialField& potential, const Grid1D& grid,
                             int count) {
  grid.validate();
  const int m = grid.nodes() - 2;
  if (count < 1 || count > m)
    throw DomainError("eigenvalue count out of range");
  const std::vector<double> d = interior_diagonal(potential, grid);
  const double e = -1.0 / (grid.h * grid.h);

  EigenSolution out;
  out.grid = grid;
  out.eigenvalues = lowest_eigenvalues(d, e, count);

  std::vector<double> sub(static_cast<size_t>(m), e);
  std::vector<double> sup(static_cast<size_t>(m), e);
  for (int k = 0; k < count; ++k) {
    const double shift =
        out.eigenvalues[static_cast<size_t>(k)] +
        1e-10 * (1.0 + std::abs(out.eigenvalues[static_cast<size_t>(k)]));
    std::vector<double> diag(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
      diag[static_cast<size_t>(i)] = d[static_cast<size_t>(i)] - shift;
    std::vector<double> v(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
      v[static_cast<size_t>(i)] = std::sin(0.7 * (i + 1) + 0.3);
    for (int it = 0; it < 3; ++it) {
      v = tridiag_solve_pivot(sub, diag, sup, std::move(v));
      const double nv = grid_norm(v, grid.h);
      for (double& a : v) a /= nv;
    }
    // orthogonalize against earlier states under the h-weighted dot
    for (const auto& w : out.eigenvectors) {
      double dot = 0.0;
      for (int i = 0; i < m; ++i)
        dot += v[static_cast<size_t>(i)] * w[static_cast<size_t>(i)];
      dot *= grid.h;
      for (int i = 0; i < m; ++i)
        v[static_cast<size_t>(i)] -= dot * w[static_cast<size_t>(i)];
    }
    const double nv = grid_norm(v, grid.h);
    for (double& a : v) a /= nv;
    int peak = 0;
    for (int i = 1; i < m; ++i)
      if (std::abs(v[static_cast<size_t>(i)]) >
          std::abs(v[static_cast<size_t>(peak)]))
        peak = i;
    if (v[static_cast<size_t>(peak)] < 0.0)
      for (double& a : v) a = -a;
    out.eigenvectors.push_back(std::move(v));
  }
  return out;
}

int negative_eigenvalue_count(const PotentialField& potential,
                              const Grid1D& grid) {
  grid.validate();
  return sturm_count_below(interior_diagonal(potential, grid),
                           -1.0 / (grid.h * grid.h), -1e-8);
}

std::vector<double> extrapolated_bound_eigenvalues(const PotentialField& potential,
                                                   const Grid1D& grid, int count) {
  grid.validate();
  const Grid1D fine = grid.refined();
  const std::vector<double> coarse_vals =
      lowest_eigenvalues(interior_diagonal(potential, grid),
                         -1.0 / (grid.h * grid.h), count);
  const std::vector<double> fine_vals =
      lowest_eigenvalues(interior_diagonal(potential, fine),
                         -1.0 / (fine.h * fine.h), count);
  std::vector<double> out(static_cast<size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double c = coarse_vals[static_cast<size_t>(k)];
    const double f = fine_vals[static_cast<size_t>(k)];
    if (std::abs(f - c) > 1e-3 * std::max(std::abs(f), 1e-9))
      throw ConvergenceError("eigenvalue " + std::to_string(k) +
                             " moved from " + std::to_string(c) + " to " +
                             std::to_string(f) + " under refinement");
    out[static_cast<size_t>(k)] = (4.0 * f - c) / 3.0;
  }
  return out;
}

}  // namespace dhk
