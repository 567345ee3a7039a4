#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "efpr/config.hpp"
#include "efpr/diagnostics.hpp"
#include "efpr/ef_scheme.hpp"
#include "efpr/eos.hpp"
#include "efpr/grid.hpp"
#include "efpr/solver.hpp"

namespace efpr {

/// Environment variable that, when set, replaces output.directory.
inline constexpr const char* kOutputDirEnv = "EFPR_OUTPUT_DIR";

/// Derived parameters of a configuration.
struct Setup {
  EosParams eos;
  EfParams ef;
  Grid2D grid;
};

Setup make_setup(const SimConfig& cfg);

/// Initial density on the grid. Droplets put c_liq in cells whose centers lie
/// strictly inside the shape and c_gas elsewhere.
CellField build_initial(const SimConfig& cfg, const Grid2D& g);

struct ExperimentOutcome {
  int exit_code = 0;
  std::string message;
  std::vector<StepReport> reports;
  std::optional<double> anisotropy_first;  // after step 1
  std::optional<double> anisotropy_last;   // after the final step
  double total_moles = 0.0;
  double max_mass_drift = 0.0;             // relative to total_moles
  AdmissibleInterval interval;
  std::filesystem::path output_directory;
};

inline constexpr double kMassRelTol = 1.0e-8;

/// Runs the configured experiment and writes series.csv, snapshots,
/// provenance.txt and summary.json into the output directory. Never throws
/// efpr::Error; the category is mapped to exit_code (config 2, domain 3,
/// solver 4, invariant 5). exit_code is 0 iff every step kept all invariants.
ExperimentOutcome run_experiment(const SimConfig& cfg, std::ostream& log);

}  // namespace efpr
