#pragma once

#include <vector>

#include "sslab/grid.hpp"

namespace sslab {

inline constexpr int kDenseLimit = 6400;

struct SpectralDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // orthonormal columns; empty when only values were asked for
  GridSpec grid;
  OperatorRole role = OperatorRole::generic;

  int dim() const noexcept { return static_cast<int>(values.size()); }
  bool has_vectors() const noexcept { return vectors.size() > 0; }
  CMatrix reconstruct() const;
  double orthonormality_defect() const;
};

int dense_limit() noexcept;
void set_dense_limit(int n);

// dense_limit <= 0 uses the process-wide setting.
SpectralDecomposition eigendecompose(const DiscreteOperator& op, bool vectors = true, int dense_limit = 0);
SpectralDecomposition eigendecompose(const CMatrix& m, bool vectors = true, int dense_limit = 0);

/// C-infinity bump exp(1 - 1/(1-u^2)), u = (t - center)/halfwidth.
///
/// With core > 0 the function is the plateau variant: 1 on
/// |t - center| <= core, falling to 0 at |t - center| = halfwidth through a
/// smooth step.
struct BumpFunction {
  double center = 0;
  double halfwidth = 1;
  double core = 0;
  double scale = 1;

  double operator()(double t) const;
  double lo() const noexcept { return center - halfwidth; }
  double hi() const noexcept { return center + halfwidth; }
  bool plateau() const noexcept { return core > 0; }
};

BumpFunction make_bump(double center, double halfwidth, double scale = 1.0);
BumpFunction make_plateau(double center, double halfwidth, double core);

// Smooth step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t);

// U diag(f) U*, touching only eigenvectors where f is nonzero.
CMatrix apply_values(const SpectralDecomposition& dec, const CVector& f);
CMatrix apply_function(const SpectralDecomposition& dec, const BumpFunction& f);
RVector sample(const BumpFunction& f, const RVector& t);

// Eigen-indices with a < lambda <= b (cut points go to the left interval).
std::vector<int> indices_in(const SpectralDecomposition& dec, double a, double b);

struct Projector {
  CMatrix p;
  int rank = 0;
  bool empty = true;
};

Projector spectral_projector(const SpectralDecomposition& dec, double a, double b);

struct WeightSpec {
  double s = 0.75;
  double p = 0.0;
  double delta = 0.5;
};

/// (I + Dx^2)^(e/2) along x, identity along y. Kept in factored form.
struct DxWeight {
  CMatrix factor;  // nx by nx
  GridSpec grid;

  CMatrix dense() const;
  CMatrix apply_left(const CMatrix& m) const;
  CMatrix apply_right(const CMatrix& m) const;
};

// (I + Dx^2)^(e/2) for an arbitrary exponent e, with Dx^2 = d2_op.
DxWeight dx_bracket(const GridSpec& grid, double e);
// <Dx>^(-s), s in (1/2, 1).
DxWeight weight_dx_s(const GridSpec& grid, const WeightSpec& w);

// <x>^p at every grid point.
RVector x_bracket(const GridSpec& grid, double p);
// k_j = <x>^(-j(1+d)) <y>^(-j(1/2+d))
RVector k_weight(const GridSpec& grid, int j, double delta);

struct LocalizedState {
  int index = 0;
  double eigenvalue = 0;
  double score = 0;  // eigenvector mass inside the sub-box
  bool localized = false;
};

inline constexpr double kLocalizationThreshold = 0.99;

inline constexpr double kDegeneracyTol = 1e-3;

// Sub-box is the centered rectangle with half-lengths (1 - 2 margin) * (lx, ly).
RVector subbox_mask(const GridSpec& grid, double margin);
// Eigenvalues closer than degeneracy_tol are treated as one eigenspace; inside
// it the basis diagonalizing the sub-box mass is used, so the result does not
// depend on how the solver rotated degenerate vectors. Each rotated state
// carries its Rayleigh quotient as eigenvalue.
std::vector<LocalizedState> localized_spectrum(const SpectralDecomposition& dec, double margin,
                                               double degeneracy_tol = kDegeneracyTol);
std::vector<double> localized_eigenvalues(const SpectralDecomposition& dec, double margin,
                                          double degeneracy_tol = kDegeneracyTol);

struct Cluster {
  double lo = 0, hi = 0, mean = 0;
  int count = 0;
};

// Splits a sorted list wherever consecutive values differ by more than `gap`.
std::vector<Cluster> cluster_levels(const std::vector<double>& sorted, double gap);

}  // namespace sslab
