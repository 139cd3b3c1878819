#include "sslab/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "sslab/kernels.hpp"

namespace sslab {

void validate(const FieldParams& f) {
  if (!(f.b > 0) || !std::isfinite(f.b)) throw ConfigError("b", "magnetic strength must be > 0");
  if (!(f.eps >= 0) || !std::isfinite(f.eps)) throw ConfigError("eps", "electric strength must be >= 0");
}

DiscreteOperator assemble_h0(const GridSpec& grid, const FieldParams& fields) {
  validate(fields);
  const int n = grid.dim();
  const double b = fields.b;
  const double ix2 = 1.0 / (grid.hx * grid.hx), iy2 = 1.0 / (grid.hy * grid.hy);
  DiscreteOperator op;
  op.grid = grid;
  op.role = OperatorRole::H0;
  op.matrix = CMatrix::Zero(n, n);
  CMatrix& m = op.matrix;
  for (int j = 0; j < grid.ny; ++j) {
    const double y = grid.y(j);
    // -2B y Dx on the x-superdiagonal: -2By * (-i/(2hx))
    const cplx hop(-ix2, b * y / grid.hx);
    for (int i = 0; i < grid.nx; ++i) {
      const int r = grid.index(i, j);
      m(r, r) = 2.0 * ix2 + 2.0 * iy2 + b * b * y * y + fields.eps * grid.x(i);
      if (i + 1 < grid.nx) {
        m(r, r + 1) = hop;
        m(r + 1, r) = std::conj(hop);
      }
      if (j + 1 < grid.ny) {
        m(r, r + grid.nx) = -iy2;
        m(r + grid.nx, r) = -iy2;
      }
    }
  }
  return op;
}

DiscreteOperator add_diagonal(const DiscreteOperator& op, const RVector& v, OperatorRole role) {
  DiscreteOperator out = op;
  out.role = role;
  out.matrix.diagonal() += v.cast<cplx>();
  return out;
}

DiscreteOperator assemble_q(const GridSpec& grid, const FieldParams& fields, const PotentialSpec& spec) {
  FieldParams f0 = fields;
  f0.eps = 0.0;
  const auto pot = eval_potential(spec, grid);
  const bool zero = spec.family == PotentialFamily::zero || spec.amplitude == 0.0;
  return add_diagonal(assemble_h0(grid, f0), pot.v, zero ? OperatorRole::Q0 : OperatorRole::Q);
}

DiscreteOperator assemble_h(const GridSpec& grid, const FieldParams& fields, const PotentialSpec& spec) {
  const auto pot = eval_potential(spec, grid);
  return add_diagonal(assemble_h0(grid, fields), pot.v, OperatorRole::H);
}

DiscreteOperator commutator_dx(const DiscreteOperator& op) {
  DiscreteOperator c;
  c.grid = op.grid;
  c.role = OperatorRole::generic;
  c.matrix = apply_dx_left(op.grid, op.matrix) - apply_dx_right(op.grid, op.matrix);
  c.matrix *= cplx(0.0, 1.0);
  return c;
}

CMatrix multiplication_commutator(const GridSpec& grid, const RVector& w) {
  const int n = grid.dim();
  CMatrix c = CMatrix::Zero(n, n);
  const double s = 1.0 / (2.0 * grid.hx);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i + 1 < grid.nx; ++i) {
      const int r = grid.index(i, j);
      const double v = (w(r + 1) - w(r)) * s;
      c(r, r + 1) = v;
      c(r + 1, r) = v;
    }
  return c;
}

RVector scalar_potential(const GridSpec& grid, const FieldParams& fields, const RVector& v) {
  RVector w = fields.eps * position_values(grid, Axis::x, 1);
  if (v.size() == w.size()) w += v;
  return w;
}

InteriorDeviation interior_deviation(const DiscreteOperator& comm, const FieldParams& fields, const RVector& dxv,
                                     int band) {
  const GridSpec& g = comm.grid;
  InteriorDeviation d;
  d.band = band;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (g.wall_distance(i, j) < band) continue;
      const int r = g.index(i, j);
      const cplx s = comm.matrix.row(r).sum();
      const double target = fields.eps + (dxv.size() ? dxv(r) : 0.0);
      d.max_dev = std::max(d.max_dev, std::abs(s.real() - target));
      d.max_row_imag = std::max(d.max_row_imag, std::abs(s.imag()));
    }
  return d;
}

}  // namespace sslab
