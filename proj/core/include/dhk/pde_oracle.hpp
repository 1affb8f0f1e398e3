#pragma once

#include <vector>

#include "dhk/potential.hpp"
#include "dhk/transmutation.hpp"

namespace dhk {

// Uniform Dirichlet-zero grid for the finite-difference oracle.
struct Grid1D {
  double x_min = -30.0;
  double x_max = 30.0;
  double h = 0.005;
  double dtau = 0.0005;

  static Grid1D standard() { return {}; }
  Grid1D refined() const { return {x_min, x_max, 0.5 * h, 0.5 * dtau}; }
  Grid1D widened() const {  // doubled span, same resolution
    const double half = 0.5 * (x_max - x_min);
    return {x_min - half, x_max + half, h, dtau};
  }

  int nodes() const;  // boundary nodes included
  double x(int i) const { return x_min + h * i; }
  int index_of(double x) const;  // nearest node; must land within h/4
  void validate() const;         // h, dtau > 0 and span an integral multiple of h
};

// Samples a normalized Gaussian bump on the grid nodes. With sigma >= 2h the
// discrete mass equals 1 to machine precision (Poisson summation), which is
// what makes it a usable delta stand-in.
std::vector<double> gaussian_profile(const Grid1D& grid, double center,
                                     double sigma);

// Crank-Nicolson (trapezoidal) evolution of rho_tau = rho_xx + u rho with
// Dirichlet-zero boundaries; second order in h and dtau. The step is
// tau_final/round(tau_final/grid.dtau) so the final time is hit exactly.
// Throws StabilityError if any step grows the L2 norm faster than
// e^{(max u + 1) dtau}, the continuum bound with margin.
std::vector<double> evolve(const std::vector<double>& potential_on_grid,
                           const std::vector<double>& initial, double tau_final,
                           const Grid1D& grid);
// PotentialField form; additionally requires |u| < 1e-8 at both ends of the
// domain (Dirichlet boundaries are only justified for decayed potentials).
std::vector<double> evolve(const PotentialField& potential,
                           const std::vector<double>& initial, double tau_final,
                           const Grid1D& grid);

// Evolves a sigma = 2h Gaussian stand-in for delta(x - y) and compares against
// the analytic kernel convolved with the same Gaussian: like with like, so the
// regularization bias cancels instead of polluting the comparison.
struct OracleComparison {
  double numeric;    // grid solution at x
  double analytic;   // integral of kernel(tau, x, z) against the same Gaussian
  double difference;
};
OracleComparison compare_with_oracle(const HeatKernel& kernel,
                                     const PotentialField& potential, double tau,
                                     double x, double y, const Grid1D& grid);

// Pointwise heat-equation residual -rho_tau + rho_xx + u rho, with rho_tau from
// a fourth-order five-point time stencil (step 0.003 tau) and rho_xx analytic.
// Returns the max absolute residual over the samples.
struct KernelPoint {
  double tau;
  double x;
  double y;
};
double kernel_residual(const HeatKernel& kernel, const PotentialField& potential,
                       const std::vector<KernelPoint>& samples);
std::vector<KernelPoint> residual_sample_grid(double kappa);

// Finite-difference Schrodinger spectrum of -d^2/dx^2 - u on the grid.
struct EigenSolution {
  std::vector<double> eigenvalues;               // ascending
  std::vector<std::vector<double>> eigenvectors; // interior nodes, orthonormal
                                                 // under the h-weighted dot
  Grid1D grid;
};
EigenSolution bound_spectrum(const PotentialField& potential, const Grid1D& grid,
                             int count);
int negative_eigenvalue_count(const PotentialField& potential,
                              const Grid1D& grid);

// Eigenvalues at h and h/2 combined by Richardson extrapolation (the h^2 error
// term cancels). Throws ConvergenceError if the two refinements disagree by
// more than 1e-3 relative.
std::vector<double> extrapolated_bound_eigenvalues(const PotentialField& potential,
                                                   const Grid1D& grid, int count);

}  // namespace dhk
