#pragma once

// One time step of the linear semi-implicit scheme
//
//   (c_new - c_old)/tau - kappa L c_new + nu(c_old) c_new = s_r(c_old) + mu_e,
//   <c_new, 1> = c_t,
//
// with L the Neumann discrete Laplacian and mu_e a spatially constant
// Lagrange multiplier. The operator A = 1/tau - kappa L + nu is SPD, so the
// constraint is eliminated with two CG solves:
//   y1 = A^{-1}(c_old/tau + s_r),  y2 = A^{-1} 1,
//   mu_e = (c_t - <y1, 1>) / <y2, 1>,  c_new = y1 + mu_e y2.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "efpr/diagnostics.hpp"
#include "efpr/ef_scheme.hpp"
#include "efpr/eos.hpp"
#include "efpr/grid.hpp"

namespace efpr {

enum class Preconditioner { none, diagonal };

/// What to do when a step breaks an invariant (bounds, admissibility of mu_e,
/// energy decrease): keep going and report it, or throw InvariantViolation.
enum class InvariantPolicy { record, strict };

/// What to do when the state entering a step leaves [c_m, c_M].
enum class BoundsPolicy { strict, warn };

struct SolverConfig {
  double tau = 1.0;                 // s
  double mobility = 1.0;            // scales tau; 1 reproduces the unscaled model
  double cg_rel_tol = 1.0e-10;
  std::size_t cg_max_iter = 0;      // 0 means 10 * cells
  Preconditioner preconditioner = Preconditioner::diagonal;
  double energy_slack_rel = 1.0e-8; // times |F_h(c0)|
  InvariantPolicy invariant_policy = InvariantPolicy::record;
  BoundsPolicy bounds_policy = BoundsPolicy::strict;
};

/// Throws ConfigError naming the offending field.
void validate(const SolverConfig& cfg);

/// A c = c/(mobility tau) - kappa L c + nu c, matrix-free.
CellField apply_operator(const CellField& c, const SchemeCoefficients& coeffs,
                         const SolverConfig& cfg, double kappa, const Grid2D& g);

struct SolveResult {
  CellField x;
  std::size_t iterations = 0;
  double residual = 0.0;  // ||b - A x|| / ||b||
};

/// Preconditioned conjugate gradients on A x = rhs. Throws ConvergenceError
/// if the relative residual does not reach cfg.cg_rel_tol within the cap.
SolveResult solve_spd(const CellField& rhs, const SchemeCoefficients& coeffs,
                      const SolverConfig& cfg, double kappa, const Grid2D& g,
                      const CellField* initial_guess = nullptr);

struct StepReport {
  std::size_t step_index = 0;
  double time = 0.0;
  double mu_e = 0.0;
  EnergyBreakdown energy;
  double c_min = 0.0;
  double c_max = 0.0;
  double mass = 0.0;
  std::size_t cg_iters_1 = 0;
  std::size_t cg_iters_2 = 0;
  double residual_1 = 0.0;
  double residual_2 = 0.0;
  double mu_lower = 0.0;
  double mu_upper = 0.0;
  bool admissibility_ok = false;
  bool bounds_ok = false;
  bool energy_decreased = false;

  bool all_ok() const noexcept { return admissibility_ok && bounds_ok && energy_decreased; }
};

/// Owns the evolving density. The total moles c_t and the energy slack are
/// fixed from the initial state.
class TimeStepper {
 public:
  TimeStepper(const CellField& c0, const EosParams& eos, const EfParams& ef,
              const SolverConfig& cfg, const Grid2D& grid);

  /// Advances one step and returns its report.
  const StepReport& advance();

  const CellField& state() const noexcept { return state_; }
  double total_moles() const noexcept { return total_moles_; }
  double initial_energy() const noexcept { return initial_energy_.total; }
  const EnergyBreakdown& energy() const noexcept { return energy_; }
  const AdmissibleInterval& interval() const noexcept { return interval_; }
  std::size_t steps_taken() const noexcept { return steps_; }
  const StepReport& last_report() const noexcept { return report_; }

 private:
  EosParams eos_;
  EfParams ef_;
  SolverConfig cfg_;
  Grid2D grid_;
  AdmissibleInterval interval_;
  CellField state_;
  double total_moles_ = 0.0;
  EnergyBreakdown initial_energy_;
  EnergyBreakdown energy_;
  std::optional<CellField> y1_;
  std::optional<CellField> y2_;
  std::size_t steps_ = 0;
  StepReport report_;
};

using StepObserver = std::function<void(const StepReport&, const CellField&)>;

struct RunResult {
  CellField final_state;
  std::vector<StepReport> reports;
};

/// Marches n_steps from c0, calling `observer` after every step.
RunResult run(const CellField& c0, std::size_t n_steps, const EfParams& ef,
              const EosParams& eos, const SolverConfig& cfg, const Grid2D& g,
              const StepObserver& observer = {});

}  // namespace efpr
