#include "efpr/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace efpr {

Grid2D::Grid2D(std::size_t nx, std::size_t ny, double h, double x0, double y0)
    : nx_(nx), ny_(ny), h_(h), x0_(x0), y0_(y0) {
  if (nx < 2 || ny < 2) {
    throw std::invalid_argument("grid needs at least 2 cells in each direction");
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("mesh size must be positive and finite");
  }
}

template <class Tag>
GridFunction<Tag>::GridFunction(std::size_t ni, std::size_t nj, std::vector<double> values)
    : ni_(ni), nj_(nj), values_(std::move(values)) {
  if (values_.size() != ni * nj) {
    throw std::invalid_argument("grid function has " + std::to_string(values_.size()) +
                                " values, expected " + std::to_string(ni * nj));
  }
}

template class GridFunction<CellTag>;
template class GridFunction<XFaceTag>;
template class GridFunction<YFaceTag>;

CellField make_cell_field(const Grid2D& g, double value) {
  return CellField(g.nx(), g.ny(), value);
}
XFaceField make_x_face_field(const Grid2D& g, double value) {
  return XFaceField(g.nx() + 1, g.ny(), value);
}
YFaceField make_y_face_field(const Grid2D& g, double value) {
  return YFaceField(g.nx(), g.ny() + 1, value);
}

namespace {

template <class Tag>
void check_extents(const GridFunction<Tag>& f, std::size_t ni, std::size_t nj,
                   const char* what) {
  if (f.ni() != ni || f.nj() != nj || f.size() != ni * nj) {
    throw std::invalid_argument(std::string(what) + " shape " + std::to_string(f.ni()) + "x" +
                                std::to_string(f.nj()) + " does not match grid (" +
                                std::to_string(ni) + "x" + std::to_string(nj) + ")");
  }
}

}  // namespace

void check_shape(const CellField& c, const Grid2D& g) {
  check_extents(c, g.nx(), g.ny(), "cell field");
}
void check_shape(const XFaceField& u, const Grid2D& g) {
  check_extents(u, g.nx() + 1, g.ny(), "x-face field");
}
void check_shape(const YFaceField& v, const Grid2D& g) {
  check_extents(v, g.nx(), g.ny() + 1, "y-face field");
}

XFaceField diff_x_c(const CellField& c, const Grid2D& g) {
  check_shape(c, g);
  XFaceField u = make_x_face_field(g);
  const double h = g.h();
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 1; i < g.nx(); ++i) {
      u(i, j) = (c(i, j) - c(i - 1, j)) / h;
    }
  }
  return u;
}

YFaceField diff_y_c(const CellField& c, const Grid2D& g) {
  check_shape(c, g);
  YFaceField v = make_y_face_field(g);
  const double h = g.h();
  for (std::size_t j = 1; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      v(i, j) = (c(i, j) - c(i, j - 1)) / h;
    }
  }
  return v;
}

CellField diff_x_u(const XFaceField& u, const Grid2D& g) {
  check_shape(u, g);
  CellField c = make_cell_field(g);
  const double h = g.h();
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      c(i, j) = (u(i + 1, j) - u(i, j)) / h;
    }
  }
  return c;
}

CellField diff_y_v(const YFaceField& v, const Grid2D& g) {
  check_shape(v, g);
  CellField c = make_cell_field(g);
  const double h = g.h();
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      c(i, j) = (v(i, j + 1) - v(i, j)) / h;
    }
  }
  return c;
}

double inner(const CellField& a, const CellField& b, const Grid2D& g) {
  check_shape(a, g);
  check_shape(b, g);
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sum += a[k] * b[k];
  }
  return g.h() * g.h() * sum;
}

double inner(const XFaceField& a, const XFaceField& b, const Grid2D& g) {
  check_shape(a, g);
  check_shape(b, g);
  double sum = 0.0;
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 1; i < g.nx(); ++i) {
      sum += a(i, j) * b(i, j);
    }
  }
  return g.h() * g.h() * sum;
}

double inner(const YFaceField& a, const YFaceField& b, const Grid2D& g) {
  check_shape(a, g);
  check_shape(b, g);
  double sum = 0.0;
  for (std::size_t j = 1; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      sum += a(i, j) * b(i, j);
    }
  }
  return g.h() * g.h() * sum;
}

double total(const CellField& c, const Grid2D& g) {
  check_shape(c, g);
  double sum = 0.0;
  for (double v : c.values()) {
    sum += v;
  }
  return g.h() * g.h() * sum;
}

CellField discrete_laplacian(const CellField& c, const Grid2D& g) {
  check_shape(c, g);
  CellField out = make_cell_field(g);
  discrete_laplacian(c.values(), out.values(), g);
  return out;
}

void discrete_laplacian(std::span<const double> c, std::span<double> out, const Grid2D& g) {
  const std::size_t nx = g.nx();
  const std::size_t ny = g.ny();
  if (c.size() != nx * ny || out.size() != nx * ny) {
    throw std::invalid_argument("laplacian: span size does not match grid");
  }
  const double h = g.h();
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t k = i + nx * j;
      const double west = i > 0 ? (c[k] - c[k - 1]) / h : 0.0;
      const double east = i + 1 < nx ? (c[k + 1] - c[k]) / h : 0.0;
      const double south = j > 0 ? (c[k] - c[k - nx]) / h : 0.0;
      const double north = j + 1 < ny ? (c[k + nx] - c[k]) / h : 0.0;
      out[k] = (east - west) / h + (north - south) / h;
    }
  }
}

}  // namespace efpr
