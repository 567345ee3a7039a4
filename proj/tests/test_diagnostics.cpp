#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "efpr/diagnostics.hpp"
#include "efpr/errors.hpp"
#include "fixtures.hpp"

using namespace efpr;
using fixtures::kGasDensity;
using fixtures::kLiquidDensity;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Brute-force extremes of c_m nu - s_r and c_M nu - s_r on a uniform grid.
AdmissibleInterval brute_interval(const EfParams& ef, const EosParams& p, int n) {
  AdmissibleInterval out{-std::numeric_limits<double>::infinity(),
                         std::numeric_limits<double>::infinity()};
  for (int k = 0; k <= n; ++k) {
    const double c = ef.c_min + (ef.c_max - ef.c_min) * k / n;
    const double nu = scheme_nu(c, ef, p);
    const double s = scheme_source(c, ef, p);
    out.mu_lower = std::max(out.mu_lower, ef.c_min * nu - s);
    out.mu_upper = std::min(out.mu_upper, ef.c_max * nu - s);
  }
  return out;
}

CellField indicator_square(const Grid2D& g, double half_side) {
  CellField c = make_cell_field(g, kGasDensity);
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i)
      if (std::abs(g.cell_x(i)) < half_side && std::abs(g.cell_y(j)) < half_side)
        c(i, j) = kLiquidDensity;
  return c;
}

CellField indicator_disk(const Grid2D& g, double radius, double cx = 0.0, double cy = 0.0) {
  CellField c = make_cell_field(g, kGasDensity);
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const double x = g.cell_x(i) - cx;
      const double y = g.cell_y(j) - cy;
      if (x * x + y * y < radius * radius) c(i, j) = kLiquidDensity;
    }
  return c;
}

constexpr double kThreshold = 0.5 * (kGasDensity + kLiquidDensity);

}  // namespace

TEST_CASE("energy of a uniform state is area times the bulk density") {
  const EosParams p = fixtures::nc4_330();
  const Grid2D g(10, 8, 3e-10);
  const EnergyBreakdown e = discrete_energy(make_cell_field(g, 5000.0), p, p.kappa, g);
  CHECK(e.gradient == 0.0);
  CHECK(rel(e.total, g.area() * bulk_free_energy(5000.0, p).total) < 1e-13);
}

TEST_CASE("energy of a 3x3 field matches a hand-assembled sum") {
  const EosParams p = fixtures::nc4_330();
  const double h = 1e-9;
  const Grid2D g(3, 3, h);
  const double vals[3][3] = {{300.0, 900.0, 4000.0}, {8000.0, 9500.0, 7000.0},
                             {260.0, 5000.0, 1200.0}};
  CellField c = make_cell_field(g);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) c(i, j) = vals[j][i];

  double bulk = 0.0;
  double grad = 0.0;
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) {
      bulk += h * h * bulk_free_energy(vals[j][i], p).total;
      if (i + 1 < 3) grad += std::pow(vals[j][i + 1] - vals[j][i], 2);
      if (j + 1 < 3) grad += std::pow(vals[j + 1][i] - vals[j][i], 2);
    }
  // h^2 weight times ((dc)/h)^2 leaves the plain squared jumps.
  grad *= 0.5 * p.kappa;

  const EnergyBreakdown e = discrete_energy(c, p, p.kappa, g);
  CHECK(rel(e.bulk, bulk) < 1e-13);
  CHECK(rel(e.gradient, grad) < 1e-13);
  CHECK(e.total == e.bulk + e.gradient);
  CHECK(e.gradient >= 0.0);
}

TEST_CASE("energy reports the cell that leaves the domain") {
  const EosParams p = fixtures::nc4_330();
  const Grid2D g(4, 4, 1e-9);
  CellField c = make_cell_field(g, 1000.0);
  c(1, 2) = 2.0 / p.beta;
  try {
    discrete_energy(c, p, p.kappa, g);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(e.cell() == std::size_t{1 + 4 * 2});
  }
}

TEST_CASE("admissible interval of the n-butane window") {
  const EosParams p = fixtures::nc4_330();
  const EfParams ef = fixtures::nc4_window(p);
  const AdmissibleInterval iv = admissible_interval(ef, p);
  CHECK_FALSE(iv.empty());
  CHECK(iv.mu_lower < iv.mu_upper);
  // Both endpoints bracket the coexistence potential.
  CHECK(iv.contains(bulk_chemical_potential(kGasDensity, p)));

  const AdmissibleInterval brute = brute_interval(ef, p, 1000000);
  CHECK(iv.mu_lower >= brute.mu_lower);
  CHECK(iv.mu_upper <= brute.mu_upper);
  CHECK(rel(iv.mu_lower, brute.mu_lower) < 1e-9);
  CHECK(rel(iv.mu_upper, brute.mu_upper) < 1e-9);

  const AdmissibleInterval fine = admissible_interval(ef, p, 2 * kDefaultIntervalSamples);
  CHECK(rel(fine.mu_lower, iv.mu_lower) < 1e-8);
  CHECK(rel(fine.mu_upper, iv.mu_upper) < 1e-8);

  const AdmissibleInterval again = admissible_interval(ef, p);
  CHECK(again.mu_lower == iv.mu_lower);
  CHECK(again.mu_upper == iv.mu_upper);
}

TEST_CASE("a degenerate window collapses onto the end-point values") {
  const EosParams p = fixtures::nc4_330();
  const double c_m = 3000.0;
  const EfParams ef = make_ef_params(p, c_m, c_m * (1.0 + 1e-6));
  const AdmissibleInterval iv = admissible_interval(ef, p);
  const double nu = scheme_nu(c_m, ef, p);
  const double s = scheme_source(c_m, ef, p);
  CHECK(rel(iv.mu_lower, ef.c_min * nu - s) < 1e-5);
  CHECK(rel(iv.mu_upper, ef.c_max * nu - s) < 1e-5);
}

TEST_CASE("nested windows with a common lambda give nested intervals") {
  const EosParams p = fixtures::nc4_330();
  const double widest = minimal_lambda(p.beta * 1.2 * kLiquidDensity);
  const std::pair<double, double> factors[] = {{0.95, 1.05}, {0.9, 1.1}, {0.8, 1.15}, {0.7, 1.2}};
  AdmissibleInterval prev{};
  bool first = true;
  for (auto [lo, hi] : factors) {
    const EfParams ef = make_ef_params(p, lo * kGasDensity, hi * kLiquidDensity, widest);
    const AdmissibleInterval iv = admissible_interval(ef, p);
    CHECK_FALSE(iv.empty());
    if (!first) {
      // A wider window loosens both bounds.
      CHECK(iv.mu_lower <= prev.mu_lower);
      CHECK(iv.mu_upper >= prev.mu_upper);
    }
    prev = iv;
    first = false;
  }
}

TEST_CASE("source range brackets the sampled source") {
  const EosParams p = fixtures::nc4_330();
  const EfParams ef = fixtures::nc4_window(p);
  const SourceRange r = source_range(ef, p);
  std::mt19937_64 rng(61);
  for (int k = 0; k < 1000; ++k) {
    const double s = scheme_source(fixtures::uniform(rng, ef.c_min, ef.c_max), ef, p);
    REQUIRE(s >= r.s_r_min);
    REQUIRE(s <= r.s_r_max);
  }
}

TEST_CASE("anisotropy of synthetic shapes") {
  const Grid2D g(100, 100, 0.3e-9, -15e-9, -15e-9);
  const double square = shape_anisotropy(indicator_square(g, 7.5e-9), g, kThreshold);
  CHECK(square > 0.1);
  const double disk = shape_anisotropy(indicator_disk(g, 8e-9), g, kThreshold);
  CHECK(disk < 0.02);
  // Moments are taken about the centroid, so translation does not matter.
  const double shifted = shape_anisotropy(indicator_disk(g, 8e-9, 2e-9, -3e-9), g, kThreshold);
  CHECK(shifted < 0.02);

  CellField ellipse = make_cell_field(g, kGasDensity);
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const double x = g.cell_x(i) / 10e-9;
      const double y = g.cell_y(j) / 5e-9;
      if (x * x + y * y < 1.0) ellipse(i, j) = kLiquidDensity;
    }
  CHECK(shape_anisotropy(ellipse, g, kThreshold) > 0.1);
}

TEST_CASE("anisotropy degenerate cases") {
  const Grid2D g(8, 8, 1.0);
  CHECK(shape_anisotropy(make_cell_field(g, kLiquidDensity), g, kThreshold) == 0.0);
  CHECK_THROWS_AS(shape_anisotropy(make_cell_field(g, kGasDensity), g, kThreshold), DomainError);
}
