#include "efpr/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include "efpr/errors.hpp"

namespace efpr {

EnergyBreakdown discrete_energy(const CellField& c, const EosParams& p, double kappa,
                                const Grid2D& g) {
  check_shape(c, g);
  CellField density = make_cell_field(g);
  for (std::size_t k = 0; k < c.size(); ++k) {
    try {
      density[k] = bulk_free_energy(c[k], p).total;
    } catch (const DomainError& e) {
      throw DomainError("cell " + std::to_string(k) + ": " + e.what(), k);
    }
  }
  const XFaceField dx = diff_x_c(c, g);
  const YFaceField dy = diff_y_c(c, g);

  EnergyBreakdown e;
  e.bulk = total(density, g);
  e.gradient = 0.5 * kappa * (inner(dx, dx, g) + inner(dy, dy, g));
  e.total = e.bulk + e.gradient;
  return e;
}

namespace {

constexpr double kGoldenRelTol = 1.0e-10;

// Maximizes f on [lo, hi] by sampling then golden-section search in the
// bracket around the best sample.
double maximize(const std::function<double(double)>& f, double lo, double hi,
                std::size_t samples) {
  if (samples < 3) {
    samples = 3;
  }
  const double step = (hi - lo) / static_cast<double>(samples - 1);
  std::size_t best = 0;
  double best_value = f(lo);
  for (std::size_t k = 1; k < samples; ++k) {
    const double c = k + 1 == samples ? hi : lo + step * static_cast<double>(k);
    const double v = f(c);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  double a = best == 0 ? lo : lo + step * static_cast<double>(best - 1);
  double b = best + 1 >= samples ? hi : lo + step * static_cast<double>(best + 1);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > kGoldenRelTol * std::abs(b)) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  return std::max({best_value, f1, f2});
}

}  // namespace

AdmissibleInterval admissible_interval(const EfParams& ef, const EosParams& p,
                                       std::size_t samples) {
  const auto lower = [&](double c) {
    return ef.c_min * scheme_nu(c, ef, p) - scheme_source(c, ef, p);
  };
  const auto negated_upper = [&](double c) {
    return -(ef.c_max * scheme_nu(c, ef, p) - scheme_source(c, ef, p));
  };
  AdmissibleInterval out;
  out.mu_lower = maximize(lower, ef.c_min, ef.c_max, samples);
  out.mu_upper = -maximize(negated_upper, ef.c_min, ef.c_max, samples);
  return out;
}

SourceRange source_range(const EfParams& ef, const EosParams& p, std::size_t samples) {
  const auto s = [&](double c) { return scheme_source(c, ef, p); };
  const auto neg = [&](double c) { return -scheme_source(c, ef, p); };
  return {-maximize(neg, ef.c_min, ef.c_max, samples),
          maximize(s, ef.c_min, ef.c_max, samples)};
}

double shape_anisotropy(const CellField& c, const Grid2D& g, double threshold) {
  check_shape(c, g);
  std::size_t count = 0;
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      if (c(i, j) > threshold) {
        ++count;
        sx += g.cell_x(i);
        sy += g.cell_y(j);
      }
    }
  }
  if (count == 0) {
    throw DomainError("shape_anisotropy: no cell exceeds the threshold " +
                      std::to_string(threshold));
  }
  if (count == c.size()) {
    return 0.0;
  }
  const double xc = sx / static_cast<double>(count);
  const double yc = sy / static_cast<double>(count);

  double ixx = 0.0;
  double iyy = 0.0;
  double r4 = 0.0;
  std::complex<double> fourfold{0.0, 0.0};
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      if (c(i, j) > threshold) {
        const double x = g.cell_x(i) - xc;
        const double y = g.cell_y(j) - yc;
        ixx += x * x;
        iyy += y * y;
        const double r2 = x * x + y * y;
        r4 += r2 * r2;
        const std::complex<double> z{x, y};
        fourfold += (z * z) * (z * z);
      }
    }
  }
  if (!(r4 > 0.0)) {
    return 0.0;  // single cell
  }
  return std::abs(ixx - iyy) / (ixx + iyy) + std::abs(fourfold) / r4;
}

}  // namespace efpr
