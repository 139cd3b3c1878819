#pragma once

#include "sslab/types.hpp"

namespace sslab {

enum class Axis { x, y };

/// Truncated rectangle [-lx, lx] x [-ly, ly] with nx * ny mesh points.
///
/// Grid point (i, j) has coordinates (-lx + i*hx, -ly + j*hy) and flat index
/// j*nx + i, so x runs fastest. Every 2D operator is therefore a Kronecker
/// product Ay (x) Ax with Ax acting on the i index.
struct GridSpec {
  double lx = 0, ly = 0;
  int nx = 0, ny = 0;
  double hx = 0, hy = 0;

  int dim() const noexcept { return nx * ny; }
  int index(int i, int j) const noexcept { return j * nx + i; }
  double x(int i) const noexcept { return -lx + i * hx; }
  double y(int j) const noexcept { return -ly + j * hy; }
  // Distance, in mesh points, from point (i, j) to the nearest wall.
  int wall_distance(int i, int j) const noexcept;
};

inline constexpr int kMinPoints = 8;

GridSpec make_grid(double lx, double ly, int nx, int ny);

// Centered difference for D = -i d/dx with Dirichlet truncation.
CMatrix d1_op(int n, double h);

// Three-point -d^2/dx^2 with Dirichlet truncation.
CMatrix d2_op(int n, double h);

// Coordinate values of one axis, raised to `power`, at every flat index.
RVector position_values(const GridSpec& grid, Axis axis, int power = 1);

enum class OperatorRole { H0, H, Q0, Q, generic };

const char* role_name(OperatorRole role) noexcept;

/// Hermitian matrix together with the grid it lives on.
struct DiscreteOperator {
  CMatrix matrix;
  GridSpec grid;
  OperatorRole role = OperatorRole::generic;

  int dim() const noexcept { return static_cast<int>(matrix.rows()); }
  // max |M - M*| / max |M|; 0 for the zero matrix.
  double hermiticity_defect() const;
};

DiscreteOperator position_op(const GridSpec& grid, Axis axis, int power = 1);

// Ax acting on the x index of the flattened grid: I_ny (x) Ax.
CMatrix kron_x(const GridSpec& grid, const CMatrix& ax);
// Ay acting on the y index: Ay (x) I_nx.
CMatrix kron_y(const GridSpec& grid, const CMatrix& ay);

double max_abs(const CMatrix& m);

}  // namespace sslab
