#include "efpr/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include <fmt/format.h>
#include <json.hpp>

#include "efpr/errors.hpp"
#include "efpr/snapshot.hpp"

namespace efpr {

Setup make_setup(const SimConfig& cfg) {
  const EosParams eos =
      derive_eos_params(cfg.substance, cfg.temperature, cfg.vartheta0, cfg.gas_constant);
  const EfParams ef = make_ef_params(eos, cfg.c_min(), cfg.c_max(), cfg.lambda);
  return Setup{eos, ef, cfg.grid.make_grid()};
}

CellField build_initial(const SimConfig& cfg, const Grid2D& g) {
  CellField c = make_cell_field(g, cfg.c_gas);
  const auto paint = [&](auto inside) {
    for (std::size_t j = 0; j < g.ny(); ++j) {
      for (std::size_t i = 0; i < g.nx(); ++i) {
        if (inside(g.cell_x(i), g.cell_y(j))) {
          c(i, j) = cfg.c_liq;
        }
      }
    }
  };
  if (const auto* sq = std::get_if<SquareDroplet>(&cfg.initial)) {
    const double a = sq->half_side;
    paint([a](double x, double y) { return std::abs(x) < a && std::abs(y) < a; });
  } else if (const auto* disk = std::get_if<DiskDroplet>(&cfg.initial)) {
    const double r2 = disk->radius * disk->radius;
    paint([r2](double x, double y) { return x * x + y * y < r2; });
  } else if (const auto* uni = std::get_if<Uniform>(&cfg.initial)) {
    c = make_cell_field(g, uni->value);
  } else {
    const auto& file = std::get<FromFile>(cfg.initial);
    SnapshotRecord snap = read_snapshot_text(file.path);
    if (snap.nx != g.nx() || snap.ny != g.ny() || std::abs(snap.h - g.h()) > 1e-12 * g.h()) {
      throw ConfigError(fmt::format("snapshot '{}' is {}x{} with h={} but the grid is {}x{} "
                                    "with h={}",
                                    file.path.string(), snap.nx, snap.ny, snap.h, g.nx(),
                                    g.ny(), g.h()),
                        "initial_condition.from_file.path");
    }
    c = std::move(snap.values);
  }
  return c;
}

namespace {

std::optional<double> try_anisotropy(const CellField& c, const Grid2D& g, double threshold) {
  try {
    return shape_anisotropy(c, g, threshold);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

class Outputs {
 public:
  Outputs(const SimConfig& cfg, const std::filesystem::path& dir) : cfg_(cfg), dir_(dir) {}

  void snapshot(const CellField& c, const Grid2D& g, std::size_t step, double time) const {
    const SnapshotRecord snap = make_snapshot(c, g, step, time);
    const std::string stem = fmt::format("snapshot_{:06d}", step);
    for (const SnapshotFormat f : cfg_.output.formats) {
      if (f == SnapshotFormat::text) {
        write_snapshot_text(dir_ / (stem + ".txt"), snap);
      } else {
        write_snapshot_csv(dir_ / (stem + ".csv"), snap);
      }
    }
  }

 private:
  const SimConfig& cfg_;
  std::filesystem::path dir_;
};

void write_summary(const std::filesystem::path& path, const ExperimentOutcome& out,
                   const SimConfig& cfg, const Setup* setup) {
  nlohmann::json j;
  j["exit_code"] = out.exit_code;
  j["message"] = out.message;
  j["steps"] = out.reports.size();
  j["requested_steps"] = cfg.n_steps;
  bool adm = true, bounds = true, energy = true;
  std::size_t first_bad = 0;
  for (const auto& r : out.reports) {
    adm = adm && r.admissibility_ok;
    bounds = bounds && r.bounds_ok;
    energy = energy && r.energy_decreased;
    if (first_bad == 0 && !r.all_ok()) {
      first_bad = r.step_index;
    }
  }
  j["all_admissibility_ok"] = adm;
  j["all_bounds_ok"] = bounds;
  j["all_energy_decreased"] = energy;
  j["mass_conserved"] = out.max_mass_drift <= kMassRelTol;
  j["max_mass_drift_rel"] = out.max_mass_drift;
  j["first_violating_step"] = first_bad;
  j["total_moles"] = out.total_moles;
  j["mu_lower"] = out.interval.mu_lower;
  j["mu_upper"] = out.interval.mu_upper;
  if (setup) {
    j["lambda"] = setup->ef.lambda;
    j["epsilon0"] = setup->ef.epsilon0;
    j["c_m"] = setup->ef.c_min;
    j["c_M"] = setup->ef.c_max;
    j["kappa"] = setup->eos.kappa;
  }
  j["anisotropy_step1"] = out.anisotropy_first ? nlohmann::json(*out.anisotropy_first) : nullptr;
  j["anisotropy_final"] = out.anisotropy_last ? nlohmann::json(*out.anisotropy_last) : nullptr;
  if (!out.reports.empty()) {
    j["final_energy"] = out.reports.back().energy.total;
    j["final_mu_e"] = out.reports.back().mu_e;
  }
  std::ofstream f(path, std::ios::trunc);
  f << j.dump(2) << '\n';
}

}  // namespace

ExperimentOutcome run_experiment(const SimConfig& cfg, std::ostream& log) {
  ExperimentOutcome out;
  out.output_directory = cfg.output.directory;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
    out.output_directory = env;
  }
  std::optional<Setup> setup;
  try {
    std::filesystem::create_directories(out.output_directory);
    {
      std::ofstream prov(out.output_directory / "provenance.txt", std::ios::trunc);
      for (const auto& line : cfg.provenance) {
        prov << line << '\n';
        log << "default: " << line << '\n';
      }
    }

    setup = make_setup(cfg);
    const Setup& s = *setup;
    if (!s.eos.subcritical()) {
      log << fmt::format("warning: T/Tc = {:.4f} is not below 1; no two-phase coexistence\n",
                         s.eos.reduced_temperature);
    }
    const CellField c0 = build_initial(cfg, s.grid);
    for (std::size_t k = 0; k < c0.size(); ++k) {
      if (cfg.solver.bounds_policy == BoundsPolicy::strict && !within_bounds(c0[k], s.ef)) {
        throw BoundsViolation(fmt::format("initial density {} at cell {} lies outside [{}, {}]",
                                          c0[k], k, s.ef.c_min, s.ef.c_max),
                              k, c0[k]);
      }
    }

    const Outputs outputs(cfg, out.output_directory);
    out.total_moles = total(c0, s.grid);
    outputs.snapshot(c0, s.grid, 0, 0.0);

    SeriesWriter series(out.output_directory / "series.csv");
    out.interval = admissible_interval(s.ef, s.eos);
    const auto [lo, hi] = std::minmax_element(c0.values().begin(), c0.values().end());
    series.write_initial(discrete_energy(c0, s.eos, s.eos.kappa, s.grid), *lo, *hi,
                         out.total_moles, out.interval);
    log << fmt::format("lambda = {:.6f}  epsilon0 = {:.6f}  mu in [{:.6f}, {:.6f}]\n",
                       s.ef.lambda, s.ef.epsilon0, out.interval.mu_lower, out.interval.mu_upper);

    const std::size_t every = cfg.output.snapshot_every;
    const auto observer = [&](const StepReport& r, const CellField& c) {
      series.write(r);
      const double drift = std::abs(r.mass - out.total_moles) / out.total_moles;
      out.max_mass_drift = std::max(out.max_mass_drift, drift);
      if (r.step_index == 1) {
        out.anisotropy_first = try_anisotropy(c, s.grid, cfg.droplet_threshold);
      }
      if (r.step_index == cfg.n_steps) {
        out.anisotropy_last = try_anisotropy(c, s.grid, cfg.droplet_threshold);
      }
      if ((every > 0 && r.step_index % every == 0) || r.step_index == cfg.n_steps) {
        outputs.snapshot(c, s.grid, r.step_index, r.time);
      }
      if (!r.all_ok()) {
        log << fmt::format("step {}: invariant violated (admissible={} bounds={} energy={})\n",
                           r.step_index, r.admissibility_ok, r.bounds_ok, r.energy_decreased);
      }
    };
    RunResult result = run(c0, cfg.n_steps, s.ef, s.eos, cfg.solver, s.grid, observer);
    out.reports = std::move(result.reports);

    bool ok = out.max_mass_drift <= kMassRelTol;
    for (const auto& r : out.reports) {
      ok = ok && r.all_ok();
    }
    out.exit_code = ok ? 0 : static_cast<int>(ErrorCategory::invariant);
    out.message = ok ? "all invariants held" : "invariant violated during the run";
  } catch (const Error& e) {
    out.exit_code = e.exit_code();
    out.message = e.what();
  } catch (const std::exception& e) {
    out.exit_code = 1;
    out.message = e.what();
  }
  log << (out.exit_code == 0 ? "ok: " : "error: ") << out.message << '\n';
  try {
    if (std::filesystem::is_directory(out.output_directory)) {
      write_summary(out.output_directory / "summary.json", out, cfg, setup ? &*setup : nullptr);
    }
  } catch (const std::exception& e) {
    log << "could not write summary: " << e.what() << '\n';
  }
  return out;
}

}  // namespace efpr
