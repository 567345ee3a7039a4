#include "efpr/ef_scheme.hpp"

#include <cmath>
#include <string>

#include "efpr/errors.hpp"

namespace efpr {

double minimal_lambda(double epsilon0) {
  if (!(epsilon0 > 0.0 && epsilon0 < 1.0)) {
    throw DomainError("epsilon0 must lie in (0, 1), got " + std::to_string(epsilon0));
  }
  const double q = epsilon0 / ((1.0 - epsilon0) * (1.0 - epsilon0));
  return q + std::sqrt(q * q - 2.0 * std::log1p(-epsilon0) * q);
}

EfParams make_ef_params(const EosParams& p, double c_min, double c_max,
                        std::optional<double> lambda) {
  if (!std::isfinite(c_min) || !std::isfinite(c_max) || !(c_min > 0.0)) {
    throw ConfigError("lower density bound c_m must be positive and finite", "c_m");
  }
  if (!(c_min < c_max)) {
    throw ConfigError("density bounds require c_m < c_M", "bounds_factors");
  }
  EfParams ef;
  ef.c_min = c_min;
  ef.c_max = c_max;
  ef.epsilon0 = p.beta * c_max;
  if (!(ef.epsilon0 < 1.0)) {
    throw ConfigError("beta*c_M = " + std::to_string(ef.epsilon0) + " must be below 1",
                      "bounds_factors");
  }
  const double lambda_min = minimal_lambda(ef.epsilon0);
  if (lambda) {
    if (!std::isfinite(*lambda) || *lambda < lambda_min) {
      throw ConfigError("lambda = " + std::to_string(*lambda) +
                            " is below the concavity threshold " + std::to_string(lambda_min),
                        "lambda");
    }
    ef.lambda = *lambda;
  } else {
    ef.lambda = lambda_min;
  }
  return ef;
}

bool within_bounds(double c, const EfParams& ef) {
  return c >= ef.c_min * (1.0 - kBoundsRelSlack) && c <= ef.c_max * (1.0 + kBoundsRelSlack);
}

GValue g_and_gprime(double c, double lambda, const EosParams& p) {
  check_density(c, p);
  const double bc = p.beta * c;
  const double log_free = std::log1p(-bc);
  const double squared = lambda * c - c * log_free;
  if (!(squared > 0.0)) {
    throw DomainError("G(c)^2 = " + std::to_string(squared) + " is not positive");
  }
  GValue out;
  out.g = std::sqrt(squared);
  out.gprime = 0.5 / out.g * (lambda - log_free + bc / (1.0 - bc));
  return out;
}

double mu_attraction(double c, const EosParams& p) { return attraction_potential(c, p); }

double scheme_nu(double c, const EfParams& ef, const EosParams& p) {
  const GValue g = g_and_gprime(c, ef.lambda, p);
  return p.rt() * (1.0 / c + g.gprime * g.gprime);
}

double scheme_source(double c, const EfParams& ef, const EosParams& p) {
  const GValue g = g_and_gprime(c, ef.lambda, p);
  const double rt = p.rt();
  return -p.vartheta0 - rt * std::log(c) +
         rt * (g.gprime * g.gprime * c - 2.0 * g.g * g.gprime + ef.lambda) -
         mu_attraction(c, p);
}

SchemeCoefficients scheme_coefficients(const CellField& c_old, const EfParams& ef,
                                       const EosParams& p, BoundsCheck check) {
  SchemeCoefficients out{CellField(c_old.ni(), c_old.nj()), CellField(c_old.ni(), c_old.nj())};
  for (std::size_t k = 0; k < c_old.size(); ++k) {
    const double c = c_old[k];
    if (check == BoundsCheck::strict && !within_bounds(c, ef)) {
      throw BoundsViolation("cell " + std::to_string(k) + " has c = " + std::to_string(c) +
                                " outside [" + std::to_string(ef.c_min) + ", " +
                                std::to_string(ef.c_max) + "]",
                            k, c);
    }
    try {
      out.nu[k] = scheme_nu(c, ef, p);
      out.s_r[k] = scheme_source(c, ef, p);
    } catch (const DomainError& e) {
      throw DomainError("cell " + std::to_string(k) + ": " + e.what(), k);
    }
  }
  return out;
}

SemiImplicitPotentials semi_implicit_potentials(double c_old, double c_new,
                                                const EfParams& ef, const EosParams& p) {
  check_density(c_new, p);
  const GValue g = g_and_gprime(c_old, ef.lambda, p);
  const double rt = p.rt();
  SemiImplicitPotentials out;
  out.mu_ideal = p.vartheta0 + rt * std::log(c_old) + rt * c_new / c_old;
  out.mu_repulsion =
      rt * g.gprime * (2.0 * g.g + g.gprime * (c_new - c_old)) - ef.lambda * rt;
  return out;
}

}  // namespace efpr
