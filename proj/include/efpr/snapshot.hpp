#pragma once

// File formats.
//
// Text snapshot: a header of `key value` lines (N, M, h, x0, y0, step, time)
// followed by the line `values` and one cell value per line in row-major
// order (index i + N*j), printed with 17 significant digits so a read-back
// is bit-exact.
//
// CSV snapshot: M rows of N comma-separated values, row j holding y-index j.
//
// Series CSV: one row per step with columns
//   step,time,F_total,F_bulk,F_gradient,mu_e,mu_lower,mu_upper,c_min,c_max,mass,cg_iters,residual
// Row 0 describes the initial state and leaves mu_e empty.

#include <cstddef>
#include <filesystem>
#include <fstream>

#include "efpr/diagnostics.hpp"
#include "efpr/grid.hpp"
#include "efpr/solver.hpp"

namespace efpr {

struct SnapshotRecord {
  std::size_t step = 0;
  double time = 0.0;
  std::size_t nx = 0;
  std::size_t ny = 0;
  double h = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  CellField values;
};

SnapshotRecord make_snapshot(const CellField& c, const Grid2D& g, std::size_t step,
                             double time);

void write_snapshot_text(const std::filesystem::path& path, const SnapshotRecord& snap);
void write_snapshot_csv(const std::filesystem::path& path, const SnapshotRecord& snap);

/// Throws ConfigError on a malformed file, naming the line.
SnapshotRecord read_snapshot_text(const std::filesystem::path& path);

class SeriesWriter {
 public:
  explicit SeriesWriter(const std::filesystem::path& path);

  void write_initial(const EnergyBreakdown& energy, double c_min, double c_max, double mass,
                     const AdmissibleInterval& interval);
  void write(const StepReport& r);

 private:
  std::ofstream out_;
};

}  // namespace efpr
