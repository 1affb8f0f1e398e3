#include <cmath>
#include <vector>

#include "dhk/errors.hpp"
#include "dhk/free_kernel.hpp"
#include "dhk/kink.hpp"
#include "dhk/pde_oracle.hpp"
#include "dhk/potential.hpp"
#include "dhk/seeds.hpp"
#include "dhk/transmutation.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace dhk;

namespace {

PotentialField potential_b(double b) {
  return PotentialField(DressingChain({SeedFunction(Parity::Even, b)}));
}

PotentialField kink_potential() {
  return PotentialField(DressingChain::kink(1.0));
}

double grid_moment(const Grid1D& grid, const std::vector<double>& v, int power) {
  double sum = 0.0;
  for (int i = 0; i < grid.nodes(); ++i)
    sum += std::pow(grid.x(i), power) * v[static_cast<size_t>(i)];
  return sum * grid.h;
}

}  // namespace

TEST_CASE("grid bookkeeping") {
  const Grid1D grid = Grid1D::standard();
  CHECK(grid.nodes() == 12001);
  CHECK(grid.x(0) == -30.0);
  CHECK(grid.index_of(0.0) == 6000);
  CHECK(grid.x(grid.index_of(-29.995)) == doctest::Approx(-29.995));
  CHECK_THROWS_AS(grid.index_of(0.00126), DomainError);  // off-node query
  CHECK_THROWS_AS(grid.index_of(100.0), DomainError);
  CHECK_NOTHROW(grid.validate());
  CHECK_THROWS_AS((Grid1D{0.0, 1.0, -0.1, 0.1}.validate()), DomainError);
  CHECK_THROWS_AS((Grid1D{0.0, 1.0, 0.3, 0.1}.validate()), DomainError);
  const Grid1D fine = grid.refined();
  CHECK(fine.h == 0.5 * grid.h);
  CHECK(fine.dtau == 0.5 * grid.dtau);
  const Grid1D wide = grid.widened();
  CHECK(wide.x_max - wide.x_min == 2.0 * (grid.x_max - grid.x_min));
  CHECK(wide.h == grid.h);
}

TEST_CASE("discrete gaussian mass is exactly one at sigma = 2h") {
  const Grid1D grid{-10.0, 10.0, 0.01, 0.001};
  const std::vector<double> v = gaussian_profile(grid, 0.3, 2.0 * grid.h);
  CHECK(grid_moment(grid, v, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(gaussian_profile(grid, 0.0, 0.0), DomainError);
}

TEST_CASE("free evolution widens a gaussian to variance 1.01") {
  const Grid1D grid = Grid1D::standard();
  const std::vector<double> zero(static_cast<size_t>(grid.nodes()), 0.0);
  const std::vector<double> out =
      evolve(zero, gaussian_profile(grid, 0.0, 0.1), 0.5, grid);
  const double mass = grid_moment(grid, out, 0);
  const double variance = grid_moment(grid, out, 2) / mass;
  CHECK(std::abs(variance - 1.01) < 1e-4);
}

TEST_CASE("regularized delta reaches the free coincidence value") {
  const Grid1D grid = Grid1D::standard();
  const std::vector<double> zero(static_cast<size_t>(grid.nodes()), 0.0);
  const std::vector<double> out =
      evolve(zero, gaussian_profile(grid, 0.0, 2.0 * grid.h), 1.0, grid);
  CHECK(std::abs(out[static_cast<size_t>(grid.index_of(0.0))] -
                 ref::free_diag_tau1) < 1e-3);
}

TEST_CASE("oracle adjudicates the growth-corrected kernel") {
  const HeatKernel kernel =
      HeatKernel::closed_form_kink(1.0, KernelVariant::ExpCorrected);
  const OracleComparison c = compare_with_oracle(kernel, kink_potential(), 0.5,
                                                 0.0, 0.0, Grid1D::standard());
  CHECK(std::abs(c.difference) < 2e-3);
  CHECK(std::abs(c.numeric - 1.6138) < 2e-3);
  CHECK(c.difference == doctest::Approx(c.numeric - c.analytic));
}

TEST_CASE("time stepper converges at second order") {
  const Grid1D coarse{-12.0, 12.0, 0.04, 0.004};
  const double s0 = 0.4, tau = 0.5;
  const double s2 = s0 * s0 + 2.0 * tau;
  auto error_at = [&](const Grid1D& grid) {
    std::vector<double> init(static_cast<size_t>(grid.nodes()));
    for (int i = 0; i < grid.nodes(); ++i) {
      const double w = grid.x(i) / s0;
      init[static_cast<size_t>(i)] =
          std::exp(-0.5 * w * w) / (s0 * std::sqrt(2.0 * M_PI));
    }
    const std::vector<double> zero(static_cast<size_t>(grid.nodes()), 0.0);
    const std::vector<double> out = evolve(zero, init, tau, grid);
    return std::abs(out[static_cast<size_t>(grid.index_of(0.0))] -
                    1.0 / std::sqrt(2.0 * M_PI * s2));
  };
  const double ratio = error_at(coarse) / error_at(coarse.refined());
  CHECK(std::log2(ratio) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("symmetric data stays symmetric under the dressed flow") {
  const Grid1D grid = Grid1D::standard();
  const std::vector<double> out =
      evolve(kink_potential(), gaussian_profile(grid, 0.0, 0.5), 0.2, grid);
  double asym = 0.0;
  const int n = grid.nodes();
  for (int i = 0; i < n; ++i)
    asym = std::max(asym, std::abs(out[static_cast<size_t>(i)] -
                                   out[static_cast<size_t>(n - 1 - i)]));
  CHECK(asym < 1e-10);
}

TEST_CASE("evolution rejects mis-scaled input") {
  const Grid1D grid{-5.0, 5.0, 0.1, 0.0005};
  const std::vector<double> init = gaussian_profile(grid, 0.0, 0.2);
  const std::vector<double> huge(static_cast<size_t>(grid.nodes()), 1e7);
  CHECK_THROWS_AS(evolve(huge, init, 0.1, grid), StabilityError);
  const std::vector<double> zero(static_cast<size_t>(grid.nodes()), 0.0);
  CHECK_THROWS_AS(evolve(zero, init, 0.0, grid), DomainError);
  CHECK_THROWS_AS(evolve(std::vector<double>(3, 0.0), init, 0.1, grid),
                  DomainError);
  // a potential still alive at the boundary invalidates Dirichlet walls
  const Grid1D narrow{-10.0, 10.0, 0.01, 0.001};
  CHECK_THROWS_AS(
      evolve(potential_b(0.05), gaussian_profile(narrow, 0.0, 0.2), 0.1, narrow),
      DomainError);
}

TEST_CASE("kernel residual is tiny for exact solutions and enforces tau >= 0.05") {
  const HeatKernel free_kernel = HeatKernel::free();
  const PotentialField none((DressingChain()));
  const std::vector<KernelPoint> pts{{0.1, 0.4, -0.2}, {0.5, -1.0, 0.3}};
  CHECK(kernel_residual(free_kernel, none, pts) < 1e-8);
  CHECK_THROWS_AS(
      kernel_residual(free_kernel, none, {KernelPoint{0.01, 0.0, 0.0}}),
      DomainError);
  CHECK_THROWS_AS(residual_sample_grid(0.0), DomainError);
  CHECK(residual_sample_grid(ref::kappa).size() >= 12);
}

TEST_CASE("as-printed kernel fails the heat equation by an order-one margin") {
  const HeatKernel printed =
      HeatKernel::closed_form_kink(1.0, KernelVariant::AsPrinted);
  const HeatKernel corrected =
      HeatKernel::closed_form_kink(1.0, KernelVariant::ExpCorrected);
  const std::vector<KernelPoint> pts{{0.3, 0.2, -0.1}, {0.8, 0.5, 0.4}};
  CHECK(kernel_residual(corrected, kink_potential(), pts) < 1e-6);
  CHECK(kernel_residual(printed, kink_potential(), pts) > 1e-2);
}

TEST_CASE("extrapolated spectrum matches the dressing wavenumbers") {
  const std::vector<double> kink_levels =
      extrapolated_bound_eigenvalues(kink_potential(), Grid1D::standard(), 2);
  REQUIRE(kink_levels.size() == 2);
  CHECK(std::abs(kink_levels[0] + 2.0) < 1e-4);
  CHECK(std::abs(kink_levels[1] + 0.5) < 1e-4);

  const Grid1D medium{-25.0, 25.0, 0.01, 0.001};
  const std::vector<double> single =
      extrapolated_bound_eigenvalues(potential_b(1.0), medium, 1);
  CHECK(std::abs(single[0] + 1.0) < 1e-4);
}

TEST_CASE("eigenvectors are orthonormal and solve the discrete problem") {
  const Grid1D grid{-20.0, 20.0, 0.02, 0.001};
  const PotentialField u = kink_potential();
  const EigenSolution sol = bound_spectrum(u, grid, 2);
  REQUIRE(sol.eigenvalues.size() == 2);
  REQUIRE(sol.eigenvectors.size() == 2);

  const int m = static_cast<int>(sol.eigenvectors[0].size());
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      double dot = 0.0;
      for (int i = 0; i < m; ++i)
        dot += sol.eigenvectors[static_cast<size_t>(a)][static_cast<size_t>(i)] *
               sol.eigenvectors[static_cast<size_t>(b)][static_cast<size_t>(i)];
      dot *= grid.h;
      CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-10);
    }
  }

  // apply -d^2/dx^2 - u directly to the returned vectors
  const double h2 = grid.h * grid.h;
  for (int a = 0; a < 2; ++a) {
    const std::vector<double>& v = sol.eigenvectors[static_cast<size_t>(a)];
    double worst = 0.0;
    for (int i = 0; i < m; ++i) {
      const double left = i > 0 ? v[static_cast<size_t>(i - 1)] : 0.0;
      const double right = i + 1 < m ? v[static_cast<size_t>(i + 1)] : 0.0;
      const double applied =
          (2.0 * v[static_cast<size_t>(i)] - left - right) / h2 -
          u(grid.x(i + 1)) * v[static_cast<size_t>(i)];
      worst = std::max(worst, std::abs(applied - sol.eigenvalues[static_cast<size_t>(a)] *
                                                     v[static_cast<size_t>(i)]));
    }
    CHECK(worst < 1e-7);
  }

  // parity: even ground state, odd first excited state
  double even_defect = 0.0, odd_defect = 0.0, scale = 0.0;
  for (int i = 0; i < m; ++i) {
    const int j = m - 1 - i;
    even_defect = std::max(even_defect,
                           std::abs(sol.eigenvectors[0][static_cast<size_t>(i)] -
                                    sol.eigenvectors[0][static_cast<size_t>(j)]));
    odd_defect = std::max(odd_defect,
                          std::abs(sol.eigenvectors[1][static_cast<size_t>(i)] +
                                   sol.eigenvectors[1][static_cast<size_t>(j)]));
    scale = std::max(scale, std::abs(sol.eigenvectors[0][static_cast<size_t>(i)]));
  }
  CHECK(even_defect < 1e-8 * scale);
  CHECK(odd_defect < 1e-8 * scale);
}

TEST_CASE("negative level counting") {
  const Grid1D grid{-20.0, 20.0, 0.02, 0.001};
  CHECK(negative_eigenvalue_count(kink_potential(), grid) == 2);
  CHECK(negative_eigenvalue_count(potential_b(1.0), grid) == 1);
  CHECK(negative_eigenvalue_count(PotentialField((DressingChain())), grid) == 0);
}

TEST_CASE("spectrum refinement failure is reported, not hidden") {
  const Grid1D coarse{-15.0, 15.0, 0.5, 0.0005};
  CHECK_THROWS_AS(extrapolated_bound_eigenvalues(potential_b(3.0), coarse, 1),
                  ConvergenceError);
  CHECK_THROWS_AS(bound_spectrum(kink_potential(), Grid1D::standard(), 0),
                  DomainError);
}
