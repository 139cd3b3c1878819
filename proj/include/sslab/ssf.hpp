#pragma once

#include <limits>
#include <vector>

#include "sslab/hamiltonian.hpp"
#include "sslab/spectral.hpp"

namespace sslab {

struct Window {
  double lo = 0, hi = 0;
};

// Spectral range trusted on this grid: [lambda_min, lambda_min + 2/h^2],
// h the coarser spacing.
Window resolved_window(const SpectralDecomposition& dec);
// Throws WindowError unless supp f sits inside w shrunk by margin.
void check_support(const BumpFunction& f, const Window& w, double margin);

inline constexpr double kWindowMargin = 0.1;

struct TraceFormulaReport {
  double lhs = 0;       // tr f(H) - tr f(H0)
  double rhs = 0;       // -(1/eps) tr(d_x V f(H))
  double residual = 0;  // lhs - rhs
  GridSpec grid;
  double h = 0;
  Window window;
};

TraceFormulaReport theorem1_check(const GridSpec& grid, const FieldParams& fields, const PotentialSpec& spec,
                                  const BumpFunction& f, double window_margin = kWindowMargin);

struct CommutatorTrace {
  cplx value;
  double h_norm = 0;  // max |eigenvalue of H|
  double bound = 0;   // 1e-10 * N * ||H||
};

// tr(i [D, H f(H)]) from an explicit commutator matrix.
CommutatorTrace commutator_trace_zero(const GridSpec& grid, const FieldParams& fields, const PotentialSpec& spec,
                                      const BumpFunction& f);
CommutatorTrace commutator_trace_zero(const DiscreteOperator& h, const BumpFunction& f);

struct TruncationRow {
  double radius = 0;
  double trace_diff = 0;  // |tr f(H_R) - tr f(H)|
  double comm_diff = 0;   // |tr(d_x(chi_R V) f(H_R)) - tr(d_x V f(H))|
};

// chi_R(r) = 1 for r <= R, 0 for r >= 2R
double radial_cutoff(double r, double radius);
double radial_cutoff_dr(double r, double radius);

std::vector<TruncationRow> truncation_convergence(const GridSpec& grid, const FieldParams& fields,
                                                  const PotentialSpec& spec, const BumpFunction& f,
                                                  const std::vector<double>& radii);

RVector xi_prime_mollified(const SpectralDecomposition& dec_h, const SpectralDecomposition& dec_h0,
                           const std::vector<double>& lambdas, double eta);

struct GapWindow {
  double a = 0, b = 0;            // admissible interval
  double below = 0, above = 0;    // bounding localized eigenvalues
};

// Interval between consecutive localized eigenvalues of Q, shrunk by margin.
// With a finite target the gap containing it is used, otherwise the lowest
// gap wide enough.
GapWindow sigma_q_gap_window(const SpectralDecomposition& dec_q, double margin, double loc_margin = 0.1,
                             double target = std::numeric_limits<double>::quiet_NaN(),
                             double degeneracy_tol = kDegeneracyTol);

struct ScalingSample {
  double eps = 0, value = 0;
};

struct ScalingReport {
  std::vector<ScalingSample> samples;
  double slope = 0, intercept = 0, r2 = 0;
  bool defined = false;
  bool underflow = false;
};

inline constexpr double kUnderflow = 1e-13;

// Least squares of log value on log eps. Samples use |value|.
ScalingReport fit_loglog(const std::vector<ScalingSample>& samples);

struct ScalingOptions {
  double gap_margin = 0.3;
  double loc_margin = 0.1;
  double degeneracy_tol = kDegeneracyTol;
};

ScalingReport epsilon_scaling(const GridSpec& grid, double b, const PotentialSpec& spec, const BumpFunction& f,
                              const std::vector<double>& eps_list, const ScalingOptions& opt = {});

// max-norm of (z-H)^-1 minus its order-n expansion around Q with exact remainder.
double resolvent_expansion_check(const DiscreteOperator& q, double eps, cplx z, int n);

}  // namespace sslab
