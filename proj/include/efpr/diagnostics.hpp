#pragma once

#include <cstddef>

#include "efpr/ef_scheme.hpp"
#include "efpr/eos.hpp"
#include "efpr/grid.hpp"

namespace efpr {

struct EnergyBreakdown {
  double bulk = 0.0;      // <f_b(c), 1>
  double gradient = 0.0;  // kappa/2 (|dx c|^2 + |dy c|^2)
  double total = 0.0;
};

/// Discrete total free energy. A cell outside the EoS domain raises
/// DomainError carrying the cell index.
EnergyBreakdown discrete_energy(const CellField& c, const EosParams& p, double kappa,
                                const Grid2D& g);

/// Range of the Lagrange multiplier for which the next state is guaranteed
/// to stay in [c_m, c_M]:
///   mu_lower = max_{c in [c_m, c_M]} c_m nu(c) - s_r(c)
///   mu_upper = min_{c in [c_m, c_M]} c_M nu(c) - s_r(c)
/// An empty range (mu_lower > mu_upper) is a valid result.
struct AdmissibleInterval {
  double mu_lower = 0.0;
  double mu_upper = 0.0;

  bool empty() const noexcept { return mu_lower > mu_upper; }
  bool contains(double mu) const noexcept { return mu >= mu_lower && mu <= mu_upper; }
};

inline constexpr std::size_t kDefaultIntervalSamples = 20000;

/// Dense sampling followed by golden-section refinement of the best bracket.
AdmissibleInterval admissible_interval(const EfParams& ef, const EosParams& p,
                                       std::size_t samples = kDefaultIntervalSamples);

/// Extremes of nu and s_r over [c_m, c_M], used by the a-priori bound on
/// mu_e: nu(c_M) c_t/|Omega| - s_r_max <= mu_e <= nu(c_m) c_t/|Omega| - s_r_min.
struct SourceRange {
  double s_r_min = 0.0;
  double s_r_max = 0.0;
};
SourceRange source_range(const EfParams& ef, const EosParams& p,
                         std::size_t samples = kDefaultIntervalSamples);

/// Deviation of the droplet {c > threshold} from a disk: the normalized
/// second-moment imbalance |Ixx - Iyy| / (Ixx + Iyy) plus the magnitude of
/// the normalized four-fold moment |sum (x + iy)^4| / sum r^4, both about the
/// droplet centroid. A square scores about 0.43, a disk about 0.
/// Returns 0 when every cell is above the threshold; throws DomainError when
/// none is.
double shape_anisotropy(const CellField& c, const Grid2D& g, double threshold);

}  // namespace efpr
