#include "efpr/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "efpr/errors.hpp"

namespace efpr {

Grid2D GridSpec::make_grid() const {
  const double h = 2.0 * half_length / static_cast<double>(nx);
  return Grid2D(nx, ny, h, -half_length, -0.5 * h * static_cast<double>(ny));
}

namespace {

std::optional<int> line_of(const YAML::Node& node) {
  if (node.Mark().is_null()) {
    return std::nullopt;
  }
  return node.Mark().line + 1;
}

[[noreturn]] void fail(const std::string& key, const std::string& message,
                       const YAML::Node& node = {}) {
  const auto line = node.IsDefined() ? line_of(node) : std::nullopt;
  const std::string where = line ? fmt::format("line {}: ", *line) : std::string();
  throw ConfigError(fmt::format("{}'{}' {}", where, key, message), key, line);
}

template <class T>
T as(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(key, "has the wrong type", node);
  }
}

// Reads the scalar at map[name]; `key` is the dotted name used in messages.
template <class T>
std::optional<T> get(const YAML::Node& map, const char* name, const std::string& key) {
  const YAML::Node node = map[name];
  if (!node.IsDefined() || node.IsNull()) {
    return std::nullopt;
  }
  return as<T>(node, key);
}

class Reader {
 public:
  explicit Reader(SimConfig& cfg) : cfg_(cfg) {}

  template <class T>
  T required(const YAML::Node& map, const char* name, const std::string& key) {
    if (auto v = get<T>(map, name, key)) {
      return *v;
    }
    fail(key, "is required but missing", map);
  }

  template <class T>
  T optional(const YAML::Node& map, const char* name, const std::string& key, T fallback,
             const std::string& shown) {
    if (auto v = get<T>(map, name, key)) {
      return *v;
    }
    cfg_.provenance.push_back(fmt::format("{} = {} (default)", key, shown));
    return fallback;
  }

 private:
  SimConfig& cfg_;
};

void check_keys(const YAML::Node& map, std::initializer_list<const char*> allowed,
                const std::string& prefix) {
  for (const auto& entry : map) {
    const auto name = entry.first.as<std::string>();
    bool known = false;
    for (const char* a : allowed) {
      known = known || name == a;
    }
    if (!known) {
      fail(prefix + name, "is not a recognized key", entry.first);
    }
  }
}

Substance read_substance(const YAML::Node& node, const std::filesystem::path& base_dir) {
  if (!node.IsDefined() || node.IsNull()) {
    fail("substance", "is required but missing");
  }
  if (node.IsScalar()) {
    const auto name = node.as<std::string>();
    if (auto preset = substance_preset(name)) {
      return *preset;
    }
    std::filesystem::path path(name);
    if (path.is_relative()) {
      path = base_dir / path;
    }
    return load_substance(path.string());
  }
  if (!node.IsMap()) {
    fail("substance", "must be a preset name, a file path or a mapping", node);
  }
  check_keys(node, {"name", "Tc_K", "Pc_bar", "omega"}, "substance.");
  Substance s;
  s.name = get<std::string>(node, "name", "substance.name").value_or("custom");
  const auto need = [&](const char* name) {
    if (auto v = get<double>(node, name, std::string("substance.") + name)) {
      return *v;
    }
    fail(std::string("substance.") + name, "is required but missing", node);
  };
  s.critical_temperature = need("Tc_K");
  s.critical_pressure = need("Pc_bar") * kPascalPerBar;
  s.acentric_factor = need("omega");
  validate(s);
  return s;
}

InitialCondition read_initial(const YAML::Node& node, double half_length,
                              const std::filesystem::path& base_dir, SimConfig& cfg) {
  if (!node.IsDefined() || node.IsNull()) {
    cfg.provenance.push_back(
        fmt::format("initial_condition = square_droplet {{half_side: {}}} (default)",
                    0.5 * half_length));
    return SquareDroplet{0.5 * half_length};
  }
  if (!node.IsMap() || node.size() != 1) {
    fail("initial_condition", "must hold exactly one of square_droplet, disk, from_file, uniform",
         node);
  }
  const auto kind = node.begin()->first.as<std::string>();
  const YAML::Node body = node.begin()->second;
  Reader reader(cfg);
  if (kind == "square_droplet") {
    const double half = body.IsMap() ? reader.optional<double>(
                                           body, "half_side", "initial_condition.square_droplet.half_side",
                                           0.5 * half_length, fmt::format("{}", 0.5 * half_length))
                                     : 0.5 * half_length;
    return SquareDroplet{half};
  }
  if (kind == "disk") {
    return DiskDroplet{reader.required<double>(body, "radius", "initial_condition.disk.radius")};
  }
  if (kind == "from_file") {
    std::filesystem::path path =
        reader.required<std::string>(body, "path", "initial_condition.from_file.path");
    if (path.is_relative()) {
      path = base_dir / path;
    }
    return FromFile{path};
  }
  if (kind == "uniform") {
    return Uniform{reader.required<double>(body, "value", "initial_condition.uniform.value")};
  }
  fail("initial_condition." + kind, "is not a known initial condition", node);
}

Preconditioner parse_preconditioner(const std::string& s, const YAML::Node& node) {
  if (s == "none") return Preconditioner::none;
  if (s == "diagonal") return Preconditioner::diagonal;
  fail("solver.preconditioner", "must be 'none' or 'diagonal'", node);
}

}  // namespace

SimConfig parse_config(const std::string& yaml_text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    const int line = e.mark.line + 1;
    throw ConfigError(fmt::format("line {}: parse error: {}", line, e.msg), "", line);
  }
  if (!root.IsMap()) {
    throw ConfigError("configuration must be a YAML mapping");
  }
  check_keys(root,
             {"substance", "T", "vartheta0", "R", "grid", "tau", "n_steps", "c_gas", "c_liq",
              "bounds_factors", "lambda", "initial_condition", "droplet_threshold", "solver",
              "output"},
             "");

  SimConfig cfg;
  Reader reader(cfg);
  cfg.substance = read_substance(root["substance"], base_dir);
  cfg.temperature = reader.required<double>(root, "T", "T");
  cfg.vartheta0 = reader.optional<double>(root, "vartheta0", "vartheta0", 0.0, "0");
  cfg.gas_constant =
      reader.optional<double>(root, "R", "R", kGasConstant, fmt::format("{}", kGasConstant));

  const YAML::Node grid = root["grid"];
  if (!grid.IsDefined() || !grid.IsMap()) {
    fail("grid", "is required and must be a mapping", grid);
  }
  check_keys(grid, {"N", "M", "L_half", "L_half_y"}, "grid.");
  const long long nx = reader.required<long long>(grid, "N", "grid.N");
  if (nx < 2) fail("grid.N", "must be at least 2", grid["N"]);
  const long long ny = reader.optional<long long>(grid, "M", "grid.M", nx, std::to_string(nx));
  if (ny < 2) fail("grid.M", "must be at least 2", grid["M"]);
  cfg.grid.nx = static_cast<std::size_t>(nx);
  cfg.grid.ny = static_cast<std::size_t>(ny);
  cfg.grid.half_length = reader.required<double>(grid, "L_half", "grid.L_half");
  if (!(cfg.grid.half_length > 0.0) || !std::isfinite(cfg.grid.half_length)) {
    fail("grid.L_half", "must be positive", grid["L_half"]);
  }
  if (auto ly = get<double>(grid, "L_half_y", "grid.L_half_y")) {
    const double hx = 2.0 * cfg.grid.half_length / static_cast<double>(nx);
    const double hy = 2.0 * *ly / static_cast<double>(ny);
    if (!(std::abs(hx - hy) <= 1e-12 * hx)) {
      fail("grid.L_half_y", "gives rectangular cells; only square cells are supported",
           grid["L_half_y"]);
    }
  }

  cfg.solver.tau = reader.required<double>(root, "tau", "tau");
  const long long steps = reader.required<long long>(root, "n_steps", "n_steps");
  if (steps < 0) fail("n_steps", "must be non-negative", root["n_steps"]);
  cfg.n_steps = static_cast<std::size_t>(steps);
  cfg.c_gas = reader.required<double>(root, "c_gas", "c_gas");
  cfg.c_liq = reader.required<double>(root, "c_liq", "c_liq");

  if (const YAML::Node bf = root["bounds_factors"]; bf.IsDefined() && !bf.IsNull()) {
    if (!bf.IsSequence() || bf.size() != 2) {
      fail("bounds_factors", "must be a two-element list [lower, upper]", bf);
    }
    cfg.bounds_factors = {as<double>(bf[0], "bounds_factors"), as<double>(bf[1], "bounds_factors")};
  } else {
    cfg.provenance.push_back("bounds_factors = [0.9, 1.1] (default)");
  }
  cfg.lambda = get<double>(root, "lambda", "lambda");
  if (!cfg.lambda) {
    cfg.provenance.push_back("lambda = minimal concavity value (default)");
  }

  cfg.initial = read_initial(root["initial_condition"], cfg.grid.half_length, base_dir, cfg);
  cfg.droplet_threshold =
      reader.optional<double>(root, "droplet_threshold", "droplet_threshold",
                              0.5 * (cfg.c_gas + cfg.c_liq),
                              fmt::format("{}", 0.5 * (cfg.c_gas + cfg.c_liq)));

  YAML::Node solver = root["solver"];
  if (solver.IsDefined() && !solver.IsNull() && !solver.IsMap()) {
    fail("solver", "must be a mapping", solver);
  }
  if (!solver.IsDefined() || solver.IsNull()) {
    solver = YAML::Node(YAML::NodeType::Map);
  }
  check_keys(solver,
             {"cg_rel_tol", "cg_max_iter", "preconditioner", "mobility", "energy_slack_rel",
              "invariant_policy", "bounds_policy"},
             "solver.");
  const SolverConfig defaults;
  cfg.solver.cg_rel_tol = reader.optional<double>(solver, "cg_rel_tol", "solver.cg_rel_tol",
                                                  defaults.cg_rel_tol, "1e-10");
  const long long max_iter = reader.optional<long long>(
      solver, "cg_max_iter", "solver.cg_max_iter", 0,
      std::to_string(10 * cfg.grid.nx * cfg.grid.ny));
  if (max_iter < 0) fail("solver.cg_max_iter", "must be non-negative", solver["cg_max_iter"]);
  cfg.solver.cg_max_iter = static_cast<std::size_t>(max_iter);
  cfg.solver.preconditioner = parse_preconditioner(
      reader.optional<std::string>(solver, "preconditioner", "solver.preconditioner",
                                   "diagonal", "diagonal"),
      solver["preconditioner"]);
  cfg.solver.mobility =
      reader.optional<double>(solver, "mobility", "solver.mobility", 1.0, "1");
  cfg.solver.energy_slack_rel = reader.optional<double>(
      solver, "energy_slack_rel", "solver.energy_slack_rel", defaults.energy_slack_rel, "1e-8");
  const auto inv = reader.optional<std::string>(solver, "invariant_policy",
                                                "solver.invariant_policy", "record", "record");
  if (inv != "record" && inv != "strict") {
    fail("solver.invariant_policy", "must be 'record' or 'strict'", solver["invariant_policy"]);
  }
  cfg.solver.invariant_policy = inv == "strict" ? InvariantPolicy::strict : InvariantPolicy::record;
  const auto bp = reader.optional<std::string>(solver, "bounds_policy", "solver.bounds_policy",
                                               "strict", "strict");
  if (bp != "strict" && bp != "warn") {
    fail("solver.bounds_policy", "must be 'strict' or 'warn'", solver["bounds_policy"]);
  }
  cfg.solver.bounds_policy = bp == "warn" ? BoundsPolicy::warn : BoundsPolicy::strict;

  YAML::Node output = root["output"];
  if (!output.IsDefined() || output.IsNull()) {
    output = YAML::Node(YAML::NodeType::Map);
  }
  check_keys(output, {"directory", "snapshot_every", "formats"}, "output.");
  cfg.output.directory =
      reader.optional<std::string>(output, "directory", "output.directory", "output", "output");
  if (cfg.output.directory.is_relative()) {
    cfg.output.directory = base_dir / cfg.output.directory;
  }
  const long long every =
      reader.optional<long long>(output, "snapshot_every", "output.snapshot_every", 0, "0");
  if (every < 0) fail("output.snapshot_every", "must be non-negative", output["snapshot_every"]);
  cfg.output.snapshot_every = static_cast<std::size_t>(every);
  if (const YAML::Node fm = output["formats"]; fm.IsDefined() && !fm.IsNull()) {
    if (!fm.IsSequence()) fail("output.formats", "must be a list", fm);
    cfg.output.formats.clear();
    for (const auto& f : fm) {
      const auto name = as<std::string>(f, "output.formats");
      if (name == "text") {
        cfg.output.formats.push_back(SnapshotFormat::text);
      } else if (name == "csv") {
        cfg.output.formats.push_back(SnapshotFormat::csv);
      } else {
        fail("output.formats", "entries must be 'text' or 'csv'", f);
      }
    }
  } else {
    cfg.provenance.push_back("output.formats = [text] (default)");
  }

  validate(cfg);
  return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read configuration file '" + path.string() + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.parent_path());
}

void validate(const SimConfig& cfg) {
  validate(cfg.substance);
  const auto positive = [](double v, const char* key) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(fmt::format("'{}' must be positive and finite", key), key);
    }
  };
  positive(cfg.temperature, "T");
  positive(cfg.gas_constant, "R");
  if (!std::isfinite(cfg.vartheta0)) {
    throw ConfigError("'vartheta0' must be finite", "vartheta0");
  }
  positive(cfg.grid.half_length, "grid.L_half");
  if (cfg.grid.nx < 2 || cfg.grid.ny < 2) {
    throw ConfigError("grid needs at least 2 cells per direction", "grid.N");
  }
  positive(cfg.c_gas, "c_gas");
  positive(cfg.c_liq, "c_liq");
  if (!(cfg.c_gas < cfg.c_liq)) {
    throw ConfigError("'c_gas' must be below 'c_liq'", "c_gas");
  }
  positive(cfg.bounds_factors.first, "bounds_factors");
  positive(cfg.bounds_factors.second, "bounds_factors");
  if (!(cfg.c_min() < cfg.c_max())) {
    throw ConfigError("bounds_factors give c_m >= c_M", "bounds_factors");
  }
  // [lower, upper] scale c_gas and c_liq; the window has to contain both.
  if (!(cfg.bounds_factors.first <= 1.0 && cfg.bounds_factors.second >= 1.0)) {
    throw ConfigError("bounds_factors must satisfy lower <= 1 <= upper", "bounds_factors");
  }
  validate(cfg.solver);

  const double half_y =
      0.5 * static_cast<double>(cfg.grid.ny) * 2.0 * cfg.grid.half_length /
      static_cast<double>(cfg.grid.nx);
  const double reach = std::min(cfg.grid.half_length, half_y);
  if (const auto* sq = std::get_if<SquareDroplet>(&cfg.initial)) {
    positive(sq->half_side, "initial_condition.square_droplet.half_side");
    if (sq->half_side > reach) {
      throw ConfigError("square droplet exceeds the domain",
                        "initial_condition.square_droplet.half_side");
    }
  } else if (const auto* disk = std::get_if<DiskDroplet>(&cfg.initial)) {
    positive(disk->radius, "initial_condition.disk.radius");
    if (disk->radius > reach) {
      throw ConfigError("disk droplet exceeds the domain", "initial_condition.disk.radius");
    }
  } else if (const auto* uni = std::get_if<Uniform>(&cfg.initial)) {
    positive(uni->value, "initial_condition.uniform.value");
  }
}

}  // namespace efpr
