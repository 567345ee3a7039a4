#pragma once

// Uniform cell-centered grid on a rectangle with square cells, and the
// face-based difference operators of the cell-centered finite difference
// method under homogeneous Neumann conditions.
//
// Storage is row-major in x: entry (i, j) lives at index i + ni * j, where
// ni is the number of entries along x (N for cells and y-faces, N + 1 for
// x-faces).

#include <cstddef>
#include <span>
#include <vector>

namespace efpr {

class Grid2D {
 public:
  /// nx x ny square cells of edge h, lower-left corner at (x0, y0).
  Grid2D(std::size_t nx, std::size_t ny, double h, double x0 = 0.0, double y0 = 0.0);

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t cells() const noexcept { return nx_ * ny_; }
  double h() const noexcept { return h_; }
  double x0() const noexcept { return x0_; }
  double y0() const noexcept { return y0_; }
  double lx() const noexcept { return static_cast<double>(nx_) * h_; }
  double ly() const noexcept { return static_cast<double>(ny_) * h_; }
  double area() const noexcept { return lx() * ly(); }

  double cell_x(std::size_t i) const noexcept {
    return x0_ + (static_cast<double>(i) + 0.5) * h_;
  }
  double cell_y(std::size_t j) const noexcept {
    return y0_ + (static_cast<double>(j) + 0.5) * h_;
  }

 private:
  std::size_t nx_;
  std::size_t ny_;
  double h_;
  double x0_;
  double y0_;
};

struct CellTag {};
struct XFaceTag {};
struct YFaceTag {};

/// Values on one of the staggered locations of the grid. The tag keeps cell
/// and face data from being mixed up.
template <class Tag>
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(std::size_t ni, std::size_t nj, double value = 0.0)
      : ni_(ni), nj_(nj), values_(ni * nj, value) {}
  GridFunction(std::size_t ni, std::size_t nj, std::vector<double> values);

  std::size_t ni() const noexcept { return ni_; }
  std::size_t nj() const noexcept { return nj_; }
  std::size_t size() const noexcept { return values_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return values_[i + ni_ * j]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i + ni_ * j]; }
  double& operator[](std::size_t k) { return values_[k]; }
  double operator[](std::size_t k) const { return values_[k]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& data() const noexcept { return values_; }

  bool operator==(const GridFunction&) const = default;

 private:
  std::size_t ni_ = 0;
  std::size_t nj_ = 0;
  std::vector<double> values_;
};

using CellField = GridFunction<CellTag>;
using XFaceField = GridFunction<XFaceTag>;
using YFaceField = GridFunction<YFaceTag>;

CellField make_cell_field(const Grid2D& g, double value = 0.0);
XFaceField make_x_face_field(const Grid2D& g, double value = 0.0);
YFaceField make_y_face_field(const Grid2D& g, double value = 0.0);

/// Throw std::invalid_argument unless the field has the grid's shape.
void check_shape(const CellField& c, const Grid2D& g);
void check_shape(const XFaceField& u, const Grid2D& g);
void check_shape(const YFaceField& v, const Grid2D& g);

/// Cell-to-face differences. Boundary faces are exactly zero.
XFaceField diff_x_c(const CellField& c, const Grid2D& g);
YFaceField diff_y_c(const CellField& c, const Grid2D& g);

/// Face-to-cell differences.
CellField diff_x_u(const XFaceField& u, const Grid2D& g);
CellField diff_y_v(const YFaceField& v, const Grid2D& g);

/// h^2-weighted inner products. Face products run over interior faces only.
/// All sums are a left fold in storage order.
double inner(const CellField& a, const CellField& b, const Grid2D& g);
double inner(const XFaceField& a, const XFaceField& b, const Grid2D& g);
double inner(const YFaceField& a, const YFaceField& b, const Grid2D& g);

/// <c, 1>.
double total(const CellField& c, const Grid2D& g);

/// diff_x_u(diff_x_c(c)) + diff_y_v(diff_y_c(c)).
CellField discrete_laplacian(const CellField& c, const Grid2D& g);

/// Allocation-free form of discrete_laplacian with identical rounding.
void discrete_laplacian(std::span<const double> c, std::span<double> out, const Grid2D& g);

}  // namespace efpr
