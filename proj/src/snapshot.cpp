#include "efpr/snapshot.hpp"

#include <algorithm>
#include <map>
#include <string>

#include <fmt/format.h>

#include "efpr/errors.hpp"

namespace efpr {

SnapshotRecord make_snapshot(const CellField& c, const Grid2D& g, std::size_t step,
                             double time) {
  check_shape(c, g);
  return SnapshotRecord{step, time, g.nx(), g.ny(), g.h(), g.x0(), g.y0(), c};
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  return out;
}

}  // namespace

void write_snapshot_text(const std::filesystem::path& path, const SnapshotRecord& snap) {
  auto out = open_for_write(path);
  out << fmt::format("N {}\nM {}\nh {:.17g}\nx0 {:.17g}\ny0 {:.17g}\nstep {}\ntime {:.17g}\n",
                     snap.nx, snap.ny, snap.h, snap.x0, snap.y0, snap.step, snap.time);
  out << "values\n";
  for (double v : snap.values.values()) {
    out << fmt::format("{:.17g}\n", v);
  }
  out.flush();
}

void write_snapshot_csv(const std::filesystem::path& path, const SnapshotRecord& snap) {
  auto out = open_for_write(path);
  for (std::size_t j = 0; j < snap.ny; ++j) {
    for (std::size_t i = 0; i < snap.nx; ++i) {
      if (i > 0) {
        out << ',';
      }
      out << fmt::format("{:.17g}", snap.values(i, j));
    }
    out << '\n';
  }
  out.flush();
}

SnapshotRecord read_snapshot_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read snapshot '" + path.string() + "'", "initial_condition");
  }
  const auto bad = [&](int line, const std::string& why) -> ConfigError {
    return ConfigError(fmt::format("{}:{}: {}", path.string(), line, why), "initial_condition",
                       line);
  };
  std::map<std::string, std::string> header;
  std::string line;
  int line_no = 0;
  bool in_values = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line == "values") {
      in_values = true;
      break;
    }
    const auto sp = line.find(' ');
    if (sp == std::string::npos) {
      throw bad(line_no, "expected 'key value'");
    }
    header[line.substr(0, sp)] = line.substr(sp + 1);
  }
  if (!in_values) {
    throw bad(line_no, "missing 'values' marker");
  }
  SnapshotRecord snap;
  try {
    snap.nx = std::stoul(header.at("N"));
    snap.ny = std::stoul(header.at("M"));
    snap.h = std::stod(header.at("h"));
    snap.x0 = header.count("x0") ? std::stod(header.at("x0")) : 0.0;
    snap.y0 = header.count("y0") ? std::stod(header.at("y0")) : 0.0;
    snap.step = std::stoul(header.at("step"));
    snap.time = std::stod(header.at("time"));
  } catch (const std::exception&) {
    throw bad(line_no, "incomplete or malformed header (need N, M, h, step, time)");
  }
  std::vector<double> values;
  values.reserve(snap.nx * snap.ny);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    try {
      std::size_t used = 0;
      values.push_back(std::stod(line, &used));
      if (used != line.size()) {
        throw std::invalid_argument("trailing characters");
      }
    } catch (const std::exception&) {
      throw bad(line_no, "not a number: '" + line + "'");
    }
  }
  if (values.size() != snap.nx * snap.ny) {
    throw bad(line_no, fmt::format("header promises {} values, found {}", snap.nx * snap.ny,
                                   values.size()));
  }
  snap.values = CellField(snap.nx, snap.ny, std::move(values));
  return snap;
}

SeriesWriter::SeriesWriter(const std::filesystem::path& path) : out_(open_for_write(path)) {
  out_ << "step,time,F_total,F_bulk,F_gradient,mu_e,mu_lower,mu_upper,c_min,c_max,mass,"
          "cg_iters,residual\n";
}

void SeriesWriter::write_initial(const EnergyBreakdown& energy, double c_min, double c_max,
                                 double mass, const AdmissibleInterval& interval) {
  out_ << fmt::format("0,0,{:.17g},{:.17g},{:.17g},,{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},0,0\n",
                      energy.total, energy.bulk, energy.gradient, interval.mu_lower,
                      interval.mu_upper, c_min, c_max, mass);
  out_.flush();
}

void SeriesWriter::write(const StepReport& r) {
  out_ << fmt::format(
      "{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},{:.17g}\n",
      r.step_index, r.time, r.energy.total, r.energy.bulk, r.energy.gradient, r.mu_e, r.mu_lower,
      r.mu_upper, r.c_min, r.c_max, r.mass, r.cg_iters_1 + r.cg_iters_2,
      std::max(r.residual_1, r.residual_2));
  out_.flush();
}

}  // namespace efpr
