#pragma once

// Simulation configuration, read from YAML. See presets/ for examples.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "efpr/eos.hpp"
#include "efpr/grid.hpp"
#include "efpr/solver.hpp"

namespace efpr {

struct GridSpec {
  std::size_t nx = 0;
  std::size_t ny = 0;
  double half_length = 0.0;  // L: the domain is [-L, L] in x, cells are 2L/N wide

  /// Grid centered at the origin.
  Grid2D make_grid() const;
};

struct SquareDroplet {
  double half_side = 0.0;
};
struct DiskDroplet {
  double radius = 0.0;
};
struct FromFile {
  std::filesystem::path path;
};
struct Uniform {
  double value = 0.0;
};
using InitialCondition = std::variant<SquareDroplet, DiskDroplet, FromFile, Uniform>;

enum class SnapshotFormat { text, csv };

struct OutputSpec {
  std::filesystem::path directory = "output";
  std::size_t snapshot_every = 0;  // 0: initial and final snapshot only
  std::vector<SnapshotFormat> formats{SnapshotFormat::text};
};

struct SimConfig {
  Substance substance;
  double temperature = 0.0;
  double vartheta0 = 0.0;
  double gas_constant = kGasConstant;
  GridSpec grid;
  std::size_t n_steps = 0;
  double c_gas = 0.0;
  double c_liq = 0.0;
  std::pair<double, double> bounds_factors{0.9, 1.1};
  std::optional<double> lambda;
  InitialCondition initial = SquareDroplet{};
  double droplet_threshold = 0.0;
  SolverConfig solver;
  OutputSpec output;

  /// One line per default that was filled in, e.g. "grid.M = 100 (default)".
  std::vector<std::string> provenance;

  double c_min() const { return bounds_factors.first * c_gas; }
  double c_max() const { return bounds_factors.second * c_liq; }
};

/// Parses and validates a YAML document. Relative paths inside it resolve
/// against `base_dir`. Throws ConfigError.
SimConfig parse_config(const std::string& yaml_text,
                       const std::filesystem::path& base_dir = {});

SimConfig load_config(const std::filesystem::path& path);

/// Re-runs the semantic checks; parse_config calls this.
void validate(const SimConfig& cfg);

}  // namespace efpr
