// Command line driver: run / check a configuration, or print the derived
// parameters of a substance.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "efpr/config.hpp"
#include "efpr/diagnostics.hpp"
#include "efpr/ef_scheme.hpp"
#include "efpr/eos.hpp"
#include "efpr/errors.hpp"
#include "efpr/experiment.hpp"

namespace {

int run_command(const std::string& path) {
  efpr::SimConfig cfg;
  try {
    cfg = efpr::load_config(path);
  } catch (const efpr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  }
  const efpr::ExperimentOutcome out = efpr::run_experiment(cfg, std::cout);
  if (!out.reports.empty()) {
    const auto& last = out.reports.back();
    std::cout << fmt::format("steps {}  F_h {:.10e}  mu_e {:.6f}  c in [{:.4f}, {:.4f}]\n",
                             out.reports.size(), last.energy.total, last.mu_e, last.c_min,
                             last.c_max);
  }
  std::cout << "output: " << out.output_directory.string() << '\n';
  return out.exit_code;
}

int check_command(const std::string& path) {
  try {
    const efpr::SimConfig cfg = efpr::load_config(path);
    const efpr::Setup setup = efpr::make_setup(cfg);
    for (const auto& line : cfg.provenance) {
      std::cout << "default: " << line << '\n';
    }
    std::cout << fmt::format("ok: {} at {} K, {}x{} cells, h = {:.6e} m, {} steps of {:.3e} s\n",
                             cfg.substance.name, cfg.temperature, setup.grid.nx(),
                             setup.grid.ny(), setup.grid.h(), cfg.n_steps, cfg.solver.tau);
    return 0;
  } catch (const efpr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  }
}

struct PropsOptions {
  std::string substance;
  double temperature = 0.0;
  double vartheta0 = 0.0;
  double c_gas = 249.1123;
  double c_liq = 9526.8428;
  double lower_factor = 0.9;
  double upper_factor = 1.1;
};

int props_command(const PropsOptions& o) {
  try {
    const efpr::Substance s = efpr::load_substance(o.substance);
    const efpr::EosParams p = efpr::derive_eos_params(s, o.temperature, o.vartheta0);
    const efpr::EfParams ef =
        efpr::make_ef_params(p, o.lower_factor * o.c_gas, o.upper_factor * o.c_liq);
    const efpr::AdmissibleInterval iv = efpr::admissible_interval(ef, p);
    std::cout << fmt::format("substance  {}\n", s.name);
    std::cout << fmt::format("T          {} K (T/Tc = {:.6f})\n", p.temperature,
                             p.reduced_temperature);
    std::cout << fmt::format("m          {:.10g}\n", p.m);
    std::cout << fmt::format("alpha      {:.10g} Pa m^6 mol^-2\n", p.alpha);
    std::cout << fmt::format("beta       {:.10g} m^3 mol^-1\n", p.beta);
    std::cout << fmt::format("kappa      {:.10g}\n", p.kappa);
    std::cout << fmt::format("c_m, c_M   {:.6f}, {:.6f} mol m^-3\n", ef.c_min, ef.c_max);
    std::cout << fmt::format("epsilon0   {:.10g}\n", ef.epsilon0);
    std::cout << fmt::format("lambda     {:.10g}\n", ef.lambda);
    std::cout << fmt::format("mu_lower   {:.10g} J mol^-1\n", iv.mu_lower);
    std::cout << fmt::format("mu_upper   {:.10g} J mol^-1\n", iv.mu_upper);
    if (iv.empty()) {
      std::cout << "warning: admissible interval is empty\n";
    }
    if (!p.subcritical()) {
      std::cout << "warning: temperature is not below the critical temperature\n";
    }
    return 0;
  } catch (const efpr::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-factorization scheme for the Peng-Robinson diffuse-interface model"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run a simulation from a YAML configuration");
  run->add_option("config", config_path, "Configuration file")->required();

  std::string check_path;
  auto* check = app.add_subcommand("check", "Validate a configuration without running it");
  check->add_option("config", check_path, "Configuration file")->required();

  PropsOptions props;
  auto* pr = app.add_subcommand("props", "Print derived EoS and scheme parameters");
  pr->add_option("substance", props.substance, "Preset name (nC4) or substance file")
      ->required();
  pr->add_option("--T", props.temperature, "Temperature in K")->required();
  pr->add_option("--vartheta0", props.vartheta0, "Ideal energy parameter, J/mol");
  pr->add_option("--c-gas", props.c_gas, "Gas density, mol/m^3 (default: nC4 at 330 K)");
  pr->add_option("--c-liq", props.c_liq, "Liquid density, mol/m^3 (default: nC4 at 330 K)");
  pr->add_option("--lower-factor", props.lower_factor, "c_m = factor * c_gas");
  pr->add_option("--upper-factor", props.upper_factor, "c_M = factor * c_liq");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(efpr::ErrorCategory::config);
  }

  if (*run) return run_command(config_path);
  if (*check) return check_command(check_path);
  return props_command(props);
}
