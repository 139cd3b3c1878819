#pragma once

#include <string>
#include <vector>

#include "sslab/hamiltonian.hpp"
#include "sslab/spectral.hpp"
#include "sslab/ssf.hpp"

namespace sslab {

struct MourreBound {
  double bound = 0;  // +inf when the projector is empty
  int rank = 0;
  bool empty = false;
  std::string warning;
};

// i [D, diag(eps x + V)]: the multiplication part of [d/dx, H]. The kinetic
// part only contributes wall corner terms.
CMatrix mourre_commutator(const GridSpec& grid, const FieldParams& fields, const RVector& v);

// Smallest eigenvalue of P C P on ran P, P the spectral projector of H on (a, b].
MourreBound mourre_gap_bound(const SpectralDecomposition& dec_h, double a, double b, const CMatrix& c);
MourreBound mourre_gap_bound(const SpectralDecomposition& dec_h, double a, double b, const FieldParams& fields,
                             const RVector& v);

struct Lemma7Options {
  double loc_margin = 0.1;
  double degeneracy_tol = kDegeneracyTol;
  double support_margin = 0.2;
  bool enforce_support = true;
};

// Throws SupportOverlapError if a localized eigenvalue of Q lies within
// support_margin of supp chi.
void check_disjoint(const BumpFunction& chi, const std::vector<double>& localized_q, double margin);

// || chi(H) <x>^-2 ||
double lemma7_norm(const SpectralDecomposition& dec_h, const BumpFunction& chi);
double lemma7_norm(const GridSpec& grid, const FieldParams& fields, const PotentialSpec& spec,
                   const BumpFunction& chi, const Lemma7Options& opt = {});
ScalingReport lemma7_sweep(const GridSpec& grid, double b, const PotentialSpec& spec, const BumpFunction& chi,
                           const std::vector<double>& eps_list, const Lemma7Options& opt = {});

struct ProbeReport {
  std::vector<double> params;
  std::vector<double> norms;
  double plateau_ratio = 0;  // norm(smallest) / norm(second smallest)
  double lambda = 0;
};

// || <Dx>^-s (H - lambda - i delta)^-1 <Dx>^-s || for each delta.
ProbeReport lap_probe(const SpectralDecomposition& dec_h, double lambda, const WeightSpec& w,
                      const std::vector<double>& deltas);

// Midpoint of the widest gap between consecutive eigenvalues inside [a, b].
double widest_gap_midpoint(const RVector& values, double a, double b);

struct LapEpsRow {
  double eps = 0, lambda = 0, norm = 0, product = 0;
};

struct LapEpsReport {
  std::vector<LapEpsRow> rows;
  double spread = 0;  // max/min of norm * eps
};

LapEpsReport lap_epsilon_law(const GridSpec& grid, double b, const PotentialSpec& spec, const Window& window,
                             const WeightSpec& w, const std::vector<double>& deltas,
                             const std::vector<double>& eps_list);

struct ScanRow {
  double eigenvalue = 0;
  double distance = 0;  // to the nearest localized Q-eigenvalue
};

struct ScanResult {
  std::vector<ScanRow> rows;
  double max_distance = 0;
};

ScanResult embedded_eigenvalue_scan(const SpectralDecomposition& dec_h, const SpectralDecomposition& dec_q,
                                    const Window& window, double loc_margin = 0.1,
                                    double degeneracy_tol = kDegeneracyTol);

}  // namespace sslab
