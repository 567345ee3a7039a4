#include "efpr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "efpr/errors.hpp"

namespace efpr {

void validate(const SolverConfig& cfg) {
  if (!(cfg.tau > 0.0) || !std::isfinite(cfg.tau)) {
    throw ConfigError("time step must be positive and finite", "tau");
  }
  if (!(cfg.mobility > 0.0) || !std::isfinite(cfg.mobility)) {
    throw ConfigError("mobility must be positive and finite", "solver.mobility");
  }
  if (!(cfg.cg_rel_tol > 0.0 && cfg.cg_rel_tol < 1.0)) {
    throw ConfigError("cg_rel_tol must lie in (0, 1)", "solver.cg_rel_tol");
  }
  if (!(cfg.energy_slack_rel >= 0.0) || !std::isfinite(cfg.energy_slack_rel)) {
    throw ConfigError("energy_slack_rel must be non-negative", "solver.energy_slack_rel");
  }
}

namespace {

double inverse_time_step(const SolverConfig& cfg) { return 1.0 / (cfg.mobility * cfg.tau); }

void apply(std::span<const double> c, std::span<double> out, const SchemeCoefficients& coeffs,
           double inv_dt, double kappa, const Grid2D& g) {
  discrete_laplacian(c, out, g);
  const auto nu = coeffs.nu.values();
  for (std::size_t k = 0; k < c.size(); ++k) {
    out[k] = inv_dt * c[k] - kappa * out[k] + nu[k] * c[k];
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sum += a[k] * b[k];
  }
  return sum;
}

}  // namespace

CellField apply_operator(const CellField& c, const SchemeCoefficients& coeffs,
                         const SolverConfig& cfg, double kappa, const Grid2D& g) {
  check_shape(c, g);
  check_shape(coeffs.nu, g);
  CellField out = make_cell_field(g);
  apply(c.values(), out.values(), coeffs, inverse_time_step(cfg), kappa, g);
  return out;
}

SolveResult solve_spd(const CellField& rhs, const SchemeCoefficients& coeffs,
                      const SolverConfig& cfg, double kappa, const Grid2D& g,
                      const CellField* initial_guess) {
  check_shape(rhs, g);
  check_shape(coeffs.nu, g);
  const std::size_t n = g.cells();
  const std::size_t max_iter = cfg.cg_max_iter > 0 ? cfg.cg_max_iter : 10 * n;
  const double inv_dt = inverse_time_step(cfg);

  // Diagonal of A: 1/tau + nu + kappa * (number of interior faces) / h^2.
  std::vector<double> inv_diag(n, 1.0);
  if (cfg.preconditioner == Preconditioner::diagonal) {
    const double kh2 = kappa / (g.h() * g.h());
    for (std::size_t j = 0; j < g.ny(); ++j) {
      for (std::size_t i = 0; i < g.nx(); ++i) {
        const double faces = (i > 0) + (i + 1 < g.nx()) + (j > 0) + (j + 1 < g.ny());
        const std::size_t k = i + g.nx() * j;
        inv_diag[k] = 1.0 / (inv_dt + coeffs.nu[k] + kh2 * faces);
      }
    }
  }

  SolveResult result;
  result.x = initial_guess ? *initial_guess : make_cell_field(g);
  check_shape(result.x, g);
  auto x = result.x.values();
  const auto b = rhs.values();

  const double b_norm = std::sqrt(dot(b, b));
  if (b_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return result;
  }

  std::vector<double> r(n), z(n), p(n), q(n);
  apply(x, q, coeffs, inv_dt, kappa, g);
  for (std::size_t k = 0; k < n; ++k) {
    r[k] = b[k] - q[k];
  }
  double rel = std::sqrt(dot(r, r)) / b_norm;
  std::vector<double> history{rel};
  if (rel <= cfg.cg_rel_tol) {
    result.residual = rel;
    return result;
  }

  for (std::size_t k = 0; k < n; ++k) {
    z[k] = inv_diag[k] * r[k];
  }
  p = z;
  double rz = dot(r, z);
  for (std::size_t it = 1; it <= max_iter; ++it) {
    apply(p, q, coeffs, inv_dt, kappa, g);
    const double alpha = rz / dot(p, q);
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * q[k];
    }
    rel = std::sqrt(dot(r, r)) / b_norm;
    history.push_back(rel);
    if (rel <= cfg.cg_rel_tol) {
      result.iterations = it;
      result.residual = rel;
      return result;
    }
    for (std::size_t k = 0; k < n; ++k) {
      z[k] = inv_diag[k] * r[k];
    }
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t k = 0; k < n; ++k) {
      p[k] = z[k] + beta * p[k];
    }
  }
  throw ConvergenceError("CG did not reach relative residual " +
                             std::to_string(cfg.cg_rel_tol) + " in " +
                             std::to_string(max_iter) + " iterations (last " +
                             std::to_string(rel) + ")",
                         std::move(history));
}

TimeStepper::TimeStepper(const CellField& c0, const EosParams& eos, const EfParams& ef,
                         const SolverConfig& cfg, const Grid2D& grid)
    : eos_(eos), ef_(ef), cfg_(cfg), grid_(grid), state_(c0) {
  validate(cfg_);
  check_shape(c0, grid_);
  interval_ = admissible_interval(ef_, eos_);
  total_moles_ = total(c0, grid_);
  initial_energy_ = discrete_energy(c0, eos_, eos_.kappa, grid_);
  energy_ = initial_energy_;
}

const StepReport& TimeStepper::advance() {
  const BoundsCheck check =
      cfg_.bounds_policy == BoundsPolicy::strict ? BoundsCheck::strict : BoundsCheck::none;
  const SchemeCoefficients coeffs = scheme_coefficients(state_, ef_, eos_, check);
  const double kappa = eos_.kappa;
  const double inv_dt = inverse_time_step(cfg_);

  CellField rhs = make_cell_field(grid_);
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    rhs[k] = inv_dt * state_[k] + coeffs.s_r[k];
  }
  const CellField ones = make_cell_field(grid_, 1.0);

  SolveResult s1 = solve_spd(rhs, coeffs, cfg_, kappa, grid_, y1_ ? &*y1_ : nullptr);
  SolveResult s2 = solve_spd(ones, coeffs, cfg_, kappa, grid_, y2_ ? &*y2_ : nullptr);

  const double y2_total = total(s2.x, grid_);
  if (!(y2_total > 0.0)) {
    throw InvariantViolation("<A^{-1} 1, 1> = " + std::to_string(y2_total) +
                             " is not positive; operator is not SPD");
  }
  const double mu_e = (total_moles_ - total(s1.x, grid_)) / y2_total;

  CellField next = make_cell_field(grid_);
  for (std::size_t k = 0; k < next.size(); ++k) {
    next[k] = s1.x[k] + mu_e * s2.x[k];
  }

  const EnergyBreakdown next_energy = discrete_energy(next, eos_, kappa, grid_);
  const auto [lo, hi] = std::minmax_element(next.values().begin(), next.values().end());

  ++steps_;
  StepReport r;
  r.step_index = steps_;
  r.time = static_cast<double>(steps_) * cfg_.tau;
  r.mu_e = mu_e;
  r.energy = next_energy;
  r.c_min = *lo;
  r.c_max = *hi;
  r.mass = total(next, grid_);
  r.cg_iters_1 = s1.iterations;
  r.cg_iters_2 = s2.iterations;
  r.residual_1 = s1.residual;
  r.residual_2 = s2.residual;
  r.mu_lower = interval_.mu_lower;
  r.mu_upper = interval_.mu_upper;
  r.admissibility_ok = interval_.contains(mu_e);
  r.bounds_ok = within_bounds(r.c_min, ef_) && within_bounds(r.c_max, ef_);
  r.energy_decreased =
      next_energy.total <= energy_.total + cfg_.energy_slack_rel * std::abs(initial_energy_.total);

  y1_ = std::move(s1.x);
  y2_ = std::move(s2.x);
  state_ = std::move(next);
  energy_ = next_energy;
  report_ = r;

  if (cfg_.invariant_policy == InvariantPolicy::strict && !r.all_ok()) {
    std::string which;
    if (!r.admissibility_ok) which += " mu_e-admissibility";
    if (!r.bounds_ok) which += " density-bounds";
    if (!r.energy_decreased) which += " energy-decrease";
    throw InvariantViolation("step " + std::to_string(r.step_index) + " violated:" + which);
  }
  return report_;
}

RunResult run(const CellField& c0, std::size_t n_steps, const EfParams& ef,
              const EosParams& eos, const SolverConfig& cfg, const Grid2D& g,
              const StepObserver& observer) {
  RunResult out;
  if (n_steps == 0) {
    check_shape(c0, g);
    out.final_state = c0;
    return out;
  }
  TimeStepper stepper(c0, eos, ef, cfg, g);
  out.reports.reserve(n_steps);
  for (std::size_t n = 0; n < n_steps; ++n) {
    const StepReport& report = stepper.advance();
    out.reports.push_back(report);
    if (observer) {
      observer(report, stepper.state());
    }
  }
  out.final_state = stepper.state();
  return out;
}

}  // namespace efpr
