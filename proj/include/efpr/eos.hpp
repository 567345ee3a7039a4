#pragma once

// Peng-Robinson thermodynamics of a single species, written density-first:
// every quantity is a function of the molar density c at fixed temperature.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace efpr {

inline constexpr double kGasConstant = 8.31446261815324;  // J/(mol K)
inline constexpr double kPascalPerBar = 1.0e5;

/// Largest admissible beta*c; the free energy is singular at beta*c = 1.
inline constexpr double kMaxPackingFraction = 1.0 - 1.0e-12;

struct Substance {
  std::string name;
  double critical_temperature = 0.0;  // K
  double critical_pressure = 0.0;     // Pa
  double acentric_factor = 0.0;
};

/// Throws ConfigError if the substance invariants do not hold.
void validate(const Substance& substance);

/// Built-in species. Currently only n-butane ("nC4", alias "n-butane").
std::optional<Substance> substance_preset(std::string_view name);
std::vector<std::string> substance_preset_names();

/// Parses a key-value block with keys name, Tc_K, Pc_bar, omega. Lines are
/// `key = value` or `key: value`; `#` starts a comment. Pressure is converted
/// from bar to Pa.
Substance parse_substance_block(std::string_view text);

/// Resolves a preset name, or else reads a substance block from the file at
/// `name_or_path`.
Substance load_substance(const std::string& name_or_path);

struct EosParams {
  double temperature = 0.0;     // K
  double gas_constant = kGasConstant;
  double vartheta0 = 0.0;       // J/mol
  double m = 0.0;
  double alpha = 0.0;           // Pa m^6 mol^-2
  double beta = 0.0;            // m^3 mol^-1
  double kappa = 0.0;           // influence parameter, as printed by its correlation
  double reduced_temperature = 0.0;

  double rt() const { return gas_constant * temperature; }
  bool subcritical() const { return reduced_temperature > 0.0 && reduced_temperature < 1.0; }
};

/// m(omega): the quadratic correlation for omega <= 0.49, the cubic above.
double m_from_acentric(double omega);

EosParams derive_eos_params(const Substance& substance, double temperature,
                            double vartheta0 = 0.0, double gas_constant = kGasConstant);

struct BulkEnergy {
  double ideal = 0.0;
  double repulsion = 0.0;
  double attraction = 0.0;
  double total = 0.0;
};

/// Throws DomainError unless 0 < c and beta*c <= kMaxPackingFraction.
void check_density(double c, const EosParams& p);

/// Helmholtz free energy density f_b(c) in J/m^3, split by contribution.
BulkEnergy bulk_free_energy(double c, const EosParams& p);

/// f_b^attraction(c) alone.
double attraction_energy(double c, const EosParams& p);

/// d/dc f_b^attraction(c).
double attraction_potential(double c, const EosParams& p);

/// mu_b(c) = f_b'(c), J/mol.
double bulk_chemical_potential(double c, const EosParams& p);

/// Pressure in Pa.
double pressure(double c, const EosParams& p);

}  // namespace efpr
