#pragma once

#include <vector>

#include "sslab/grid.hpp"

namespace sslab {

// Every hot loop has a serial reference and an OpenMP version. The parallel
// versions use static partitions over independent outputs and sum partials
// in a fixed order, so both paths give bit-identical results.
enum class Exec { serial, parallel };

Exec default_exec() noexcept;
void set_default_exec(Exec e) noexcept;
// 0 leaves the OpenMP runtime default alone.
void set_thread_count(int n);

// D*M and M*D for D = I (x) d1 (x-stencil, Dirichlet).
CMatrix apply_dx_left(const GridSpec& grid, const CMatrix& m, Exec e = default_exec());
CMatrix apply_dx_right(const GridSpec& grid, const CMatrix& m, Exec e = default_exec());

// sum_ij A_ij B_ji
cplx trace_product(const CMatrix& a, const CMatrix& b, Exec e = default_exec());

// For each column k: sum_i w_i |U_ik|^2
RVector column_weighted_mass(const CMatrix& u, const RVector& w, Exec e = default_exec());

// U * diag(s)
CMatrix scale_columns(const CMatrix& u, const CVector& s, Exec e = default_exec());

// Gaussian-mollified eigenvalue counting difference at each lambda.
RVector mollified_difference(const RVector& eig1, const RVector& eig0, const std::vector<double>& lambdas,
                             double eta, Exec e = default_exec());

}  // namespace sslab
