#include "sslab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace sslab {

int GridSpec::wall_distance(int i, int j) const noexcept {
  return std::min({i, nx - 1 - i, j, ny - 1 - j});
}

GridSpec make_grid(double lx, double ly, int nx, int ny) {
  if (!(lx > 0)) throw ConfigError("lx", "half-length must be positive");
  if (!(ly > 0)) throw ConfigError("ly", "half-length must be positive");
  if (nx < kMinPoints) throw ConfigError("nx", "need at least 8 points, got " + std::to_string(nx));
  if (ny < kMinPoints) throw ConfigError("ny", "need at least 8 points, got " + std::to_string(ny));
  GridSpec g;
  g.lx = lx;
  g.ly = ly;
  g.nx = nx;
  g.ny = ny;
  g.hx = 2.0 * lx / (nx - 1);
  g.hy = 2.0 * ly / (ny - 1);
  return g;
}

CMatrix d1_op(int n, double h) {
  if (n < kMinPoints) throw ConfigError("n", "need at least 8 points");
  if (!(h > 0)) throw ConfigError("h", "spacing must be positive");
  CMatrix m = CMatrix::Zero(n, n);
  const cplx c(0.0, 1.0 / (2.0 * h));
  for (int i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = -c;
    m(i + 1, i) = c;
  }
  return m;
}

CMatrix d2_op(int n, double h) {
  if (n < kMinPoints) throw ConfigError("n", "need at least 8 points");
  if (!(h > 0)) throw ConfigError("h", "spacing must be positive");
  CMatrix m = CMatrix::Zero(n, n);
  const double inv = 1.0 / (h * h);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 2.0 * inv;
    if (i + 1 < n) {
      m(i, i + 1) = -inv;
      m(i + 1, i) = -inv;
    }
  }
  return m;
}

RVector position_values(const GridSpec& grid, Axis axis, int power) {
  RVector v(grid.dim());
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double c = axis == Axis::x ? grid.x(i) : grid.y(j);
      v(grid.index(i, j)) = power == 0 ? 1.0 : std::pow(c, power);
    }
  }
  return v;
}

const char* role_name(OperatorRole role) noexcept {
  switch (role) {
    case OperatorRole::H0: return "H0";
    case OperatorRole::H: return "H";
    case OperatorRole::Q0: return "Q0";
    case OperatorRole::Q: return "Q";
    case OperatorRole::generic: return "generic";
  }
  return "generic";
}

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double DiscreteOperator::hermiticity_defect() const {
  const double scale = max_abs(matrix);
  if (scale == 0) return 0.0;
  return max_abs(matrix - matrix.adjoint()) / scale;
}

DiscreteOperator position_op(const GridSpec& grid, Axis axis, int power) {
  DiscreteOperator op;
  op.grid = grid;
  op.matrix = position_values(grid, axis, power).cast<cplx>().asDiagonal();
  return op;
}

CMatrix kron_x(const GridSpec& grid, const CMatrix& ax) {
  const int n = grid.dim();
  CMatrix out = CMatrix::Zero(n, n);
  for (int j = 0; j < grid.ny; ++j)
    out.block(j * grid.nx, j * grid.nx, grid.nx, grid.nx) = ax;
  return out;
}

CMatrix kron_y(const GridSpec& grid, const CMatrix& ay) {
  const int n = grid.dim();
  CMatrix out = CMatrix::Zero(n, n);
  for (int j = 0; j < grid.ny; ++j)
    for (int k = 0; k < grid.ny; ++k) {
      const cplx a = ay(j, k);
      if (a == cplx(0)) continue;
      for (int i = 0; i < grid.nx; ++i) out(grid.index(i, j), grid.index(i, k)) = a;
    }
  return out;
}

}  // namespace sslab
