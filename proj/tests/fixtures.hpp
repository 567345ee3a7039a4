#pragma once

#include <random>

#include "efpr/ef_scheme.hpp"
#include "efpr/eos.hpp"

namespace fixtures {

// n-butane coexistence densities at 330 K.
inline constexpr double kGasDensity = 249.1123;
inline constexpr double kLiquidDensity = 9526.8428;

inline efpr::EosParams nc4_330() {
  return efpr::derive_eos_params(*efpr::substance_preset("nC4"), 330.0);
}

inline efpr::EfParams nc4_window(const efpr::EosParams& p) {
  return efpr::make_ef_params(p, 0.9 * kGasDensity, 1.1 * kLiquidDensity);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace fixtures
