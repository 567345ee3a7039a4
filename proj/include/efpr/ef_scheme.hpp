#pragma once

// Energy-factorization quantities for the Peng-Robinson bulk energy.
//
// The ideal term c ln c is split as c * ln c with ln c linearized (ln is
// concave), and the shifted repulsion energy lambda*c - c ln(1 - beta c) is
// written as G(c)^2 with G concave for large enough lambda. Linearizing the
// factors yields chemical potentials that are linear in the new density and
// still bound the energy increment from above.

#include <optional>

#include "efpr/eos.hpp"
#include "efpr/grid.hpp"

namespace efpr {

/// Relative tolerance on [c_m, c_M] membership checks.
inline constexpr double kBoundsRelSlack = 1.0e-10;

struct EfParams {
  double lambda = 0.0;
  double c_min = 0.0;     // c_m, mol/m^3
  double c_max = 0.0;     // c_M, mol/m^3
  double epsilon0 = 0.0;  // beta * c_M
};

/// Smallest lambda for which G is concave on (0, c_M] when beta*c_M = epsilon0.
double minimal_lambda(double epsilon0);

/// Validates 0 < c_min < c_max and beta*c_max < 1. lambda defaults to
/// minimal_lambda(beta*c_max); an explicit value below that is rejected.
EfParams make_ef_params(const EosParams& p, double c_min, double c_max,
                        std::optional<double> lambda = std::nullopt);

bool within_bounds(double c, const EfParams& ef);

struct GValue {
  double g = 0.0;
  double gprime = 0.0;
};

/// G(c) = sqrt(lambda c - c ln(1 - beta c)) and its derivative.
GValue g_and_gprime(double c, double lambda, const EosParams& p);

/// Chemical potential of the attraction term, treated explicitly.
double mu_attraction(double c, const EosParams& p);

/// nu(c) = RT (1/c + G'(c)^2), the implicit coefficient.
double scheme_nu(double c, const EfParams& ef, const EosParams& p);

/// s_r(c) = -vartheta0 - RT ln c + RT (G'^2 c - 2 G G' + lambda) - mu_attraction(c).
double scheme_source(double c, const EfParams& ef, const EosParams& p);

struct SchemeCoefficients {
  CellField nu;
  CellField s_r;
};

enum class BoundsCheck { strict, none };

/// Cell-wise nu and s_r of the previous state. With BoundsCheck::strict a cell
/// outside [c_m, c_M] raises BoundsViolation carrying its index.
SchemeCoefficients scheme_coefficients(const CellField& c_old, const EfParams& ef,
                                       const EosParams& p,
                                       BoundsCheck check = BoundsCheck::strict);

struct SemiImplicitPotentials {
  double mu_ideal = 0.0;
  double mu_repulsion = 0.0;
};

/// The linearized ideal and repulsion potentials for one old/new density pair.
SemiImplicitPotentials semi_implicit_potentials(double c_old, double c_new,
                                                const EfParams& ef, const EosParams& p);

}  // namespace efpr
