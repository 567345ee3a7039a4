#include "efpr/eos.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "efpr/errors.hpp"

namespace efpr {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& text, const std::string& key, int line) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || trim(std::string_view(text).substr(used)).size() != 0) {
    throw ConfigError("line " + std::to_string(line) + ": '" + key +
                          "' expects a number, got '" + text + "'",
                      key, line);
  }
  return value;
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw ConfigError(std::string("non-finite value for ") + name, name);
  }
}

}  // namespace

void validate(const Substance& s) {
  require_finite(s.critical_temperature, "Tc_K");
  require_finite(s.critical_pressure, "Pc_bar");
  require_finite(s.acentric_factor, "omega");
  if (s.critical_temperature <= 0.0) {
    throw ConfigError("critical temperature must be positive", "Tc_K");
  }
  if (s.critical_pressure <= 0.0) {
    throw ConfigError("critical pressure must be positive", "Pc_bar");
  }
}

std::optional<Substance> substance_preset(std::string_view name) {
  if (name == "nC4" || name == "n-butane") {
    return Substance{"nC4", 425.2, 38.0 * kPascalPerBar, 0.199};
  }
  return std::nullopt;
}

std::vector<std::string> substance_preset_names() { return {"nC4", "n-butane"}; }

Substance parse_substance_block(std::string_view text) {
  std::map<std::string, std::pair<std::string, int>> entries;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto sep = line.find_first_of("=:");
    if (sep == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'", "",
                        line_no);
    }
    const std::string key = trim(std::string_view(line).substr(0, sep));
    const std::string value = trim(std::string_view(line).substr(sep + 1));
    if (key != "name" && key != "Tc_K" && key != "Pc_bar" && key != "omega") {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown substance key '" +
                            key + "'",
                        key, line_no);
    }
    entries[key] = {value, line_no};
  }
  for (const char* key : {"Tc_K", "Pc_bar", "omega"}) {
    if (!entries.count(key)) {
      throw ConfigError(std::string("substance block is missing '") + key + "'", key);
    }
  }
  Substance s;
  s.name = entries.count("name") ? entries["name"].first : std::string("custom");
  const auto number = [&](const char* key) {
    const auto& [value, line] = entries.at(key);
    return parse_number(value, key, line);
  };
  s.critical_temperature = number("Tc_K");
  s.critical_pressure = number("Pc_bar") * kPascalPerBar;
  s.acentric_factor = number("omega");
  validate(s);
  return s;
}

Substance load_substance(const std::string& name_or_path) {
  if (auto preset = substance_preset(name_or_path)) {
    return *preset;
  }
  std::ifstream in(name_or_path);
  if (!in) {
    throw ConfigError("unknown substance preset or unreadable file '" + name_or_path + "'",
                      "substance");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_substance_block(buffer.str());
}

double m_from_acentric(double omega) {
  if (omega <= 0.49) {
    return 0.37464 + 1.54226 * omega - 0.26992 * omega * omega;
  }
  return 0.379642 + 1.485030 * omega - 0.164423 * omega * omega +
         0.016666 * omega * omega * omega;
}

EosParams derive_eos_params(const Substance& substance, double temperature, double vartheta0,
                            double gas_constant) {
  validate(substance);
  require_finite(temperature, "T");
  require_finite(vartheta0, "vartheta0");
  require_finite(gas_constant, "R");
  if (temperature <= 0.0) {
    throw ConfigError("temperature must be positive", "T");
  }
  if (gas_constant <= 0.0) {
    throw ConfigError("gas constant must be positive", "R");
  }

  const double tc = substance.critical_temperature;
  const double pc = substance.critical_pressure;
  const double omega = substance.acentric_factor;

  EosParams p;
  p.temperature = temperature;
  p.gas_constant = gas_constant;
  p.vartheta0 = vartheta0;
  p.reduced_temperature = temperature / tc;
  p.m = m_from_acentric(omega);

  const double root = 1.0 + p.m * (1.0 - std::sqrt(p.reduced_temperature));
  p.alpha = 0.45724 * gas_constant * gas_constant * tc * tc / pc * root * root;
  p.beta = 0.07780 * gas_constant * tc / pc;

  const double a0 = -1.0e-16 / (1.2326 + 1.3757 * omega);
  const double a1 = 1.0e-16 / (0.9051 + 1.5410 * omega);
  p.kappa = p.alpha * std::cbrt(p.beta * p.beta) * (a0 * (1.0 - p.reduced_temperature) + a1);
  return p;
}

void check_density(double c, const EosParams& p) {
  if (!(c > 0.0)) {
    throw DomainError("molar density must be positive (c = " + std::to_string(c) + ")");
  }
  if (!(p.beta * c <= kMaxPackingFraction)) {
    throw DomainError("beta*c must stay below 1 (beta*c = " + std::to_string(p.beta * c) +
                      ")");
  }
}

double attraction_energy(double c, const EosParams& p) {
  check_density(c, p);
  const double bc = p.beta * c;
  return p.alpha * c / (2.0 * kSqrt2 * p.beta) *
         std::log((1.0 + (1.0 - kSqrt2) * bc) / (1.0 + (1.0 + kSqrt2) * bc));
}

double attraction_potential(double c, const EosParams& p) {
  check_density(c, p);
  const double bc = p.beta * c;
  return p.alpha / (2.0 * kSqrt2 * p.beta) *
             std::log((1.0 + (1.0 - kSqrt2) * bc) / (1.0 + (1.0 + kSqrt2) * bc)) -
         p.alpha * c / (1.0 + 2.0 * bc - bc * bc);
}

BulkEnergy bulk_free_energy(double c, const EosParams& p) {
  check_density(c, p);
  const double rt = p.rt();
  BulkEnergy e;
  e.ideal = c * p.vartheta0 + c * rt * std::log(c);
  e.repulsion = -c * rt * std::log1p(-p.beta * c);
  e.attraction = attraction_energy(c, p);
  e.total = e.ideal + e.repulsion + e.attraction;
  return e;
}

double bulk_chemical_potential(double c, const EosParams& p) {
  check_density(c, p);
  const double rt = p.rt();
  const double bc = p.beta * c;
  const double ideal = p.vartheta0 + rt * std::log(c) + rt;
  const double repulsion = -rt * std::log1p(-bc) + rt * bc / (1.0 - bc);
  return ideal + repulsion + attraction_potential(c, p);
}

double pressure(double c, const EosParams& p) {
  check_density(c, p);
  const double bc = p.beta * c;
  return c * p.rt() / (1.0 - bc) - p.alpha * c * c / (1.0 + 2.0 * bc - bc * bc);
}

}  // namespace efpr
