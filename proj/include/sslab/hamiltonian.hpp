#pragma once

#include "sslab/grid.hpp"
#include "sslab/potentials.hpp"

namespace sslab {

struct FieldParams {
  double b = 1.0;
  double eps = 0.0;
};

// Throws ConfigError unless b > 0 and eps >= 0.
void validate(const FieldParams& f);

// H0 = Dx^2 - 2B Y Dx + B^2 Y^2 + Dy^2 + eps X
DiscreteOperator assemble_h0(const GridSpec& grid, const FieldParams& fields);
// Q = H0 - eps X + V; tagged Q0 for the zero potential.
DiscreteOperator assemble_q(const GridSpec& grid, const FieldParams& fields, const PotentialSpec& spec);
// H = H0 + V
DiscreteOperator assemble_h(const GridSpec& grid, const FieldParams& fields, const PotentialSpec& spec);

// Adds diag(v) to a copy of op.
DiscreteOperator add_diagonal(const DiscreteOperator& op, const RVector& v, OperatorRole role);

// i [D, M] with D = I (x) d1, i.e. the commutator with d/dx. Computed from
// the stencil, so the discretization defect is the genuine one.
DiscreteOperator commutator_dx(const DiscreteOperator& op);

// i [D, diag(w)]: the part of the commutator coming from a multiplication
// operator. Nonzero only on x-neighbour pairs, row sums are the centered
// difference of w.
CMatrix multiplication_commutator(const GridSpec& grid, const RVector& w);

// eps*x + V at every grid point.
RVector scalar_potential(const GridSpec& grid, const FieldParams& fields, const RVector& v);

struct InteriorDeviation {
  double max_dev = 0;  // max over interior rows of |row sum - (eps + d_x V)|
  double max_row_imag = 0;
  int band = 2;
};

// Compares row sums of a commutator against eps + d_x V away from a wall band.
InteriorDeviation interior_deviation(const DiscreteOperator& comm, const FieldParams& fields,
                                     const RVector& dxv, int band = 2);

}  // namespace sslab
