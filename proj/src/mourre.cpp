#include "sslab/mourre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sslab/kernels.hpp"
#include "sslab/linalg.hpp"
#include "sslab/traces.hpp"

namespace sslab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CMatrix columns(const CMatrix& u, const std::vector<int>& idx) {
  CMatrix out(u.rows(), idx.size());
  for (std::size_t c = 0; c < idx.size(); ++c) out.col(c) = u.col(idx[c]);
  return out;
}

}  // namespace

CMatrix mourre_commutator(const GridSpec& grid, const FieldParams& fields, const RVector& v) {
  return multiplication_commutator(grid, scalar_potential(grid, fields, v));
}

MourreBound mourre_gap_bound(const SpectralDecomposition& dec, double a, double b, const CMatrix& c) {
  if (!(a < b)) throw ConfigError("interval", "need a < b");
  MourreBound out;
  const auto idx = indices_in(dec, a, b);
  out.rank = static_cast<int>(idx.size());
  if (idx.empty()) {
    out.empty = true;
    out.bound = kInf;
    out.warning = "spectral projector is empty on the requested interval";
    return out;
  }
  const CMatrix us = columns(dec.vectors, idx);
  CMatrix m = us.adjoint() * (c * us);
  m = 0.5 * (m + m.adjoint()).eval();
  out.bound = hermitian_eig(m, false)(0);
  return out;
}

MourreBound mourre_gap_bound(const SpectralDecomposition& dec, double a, double b, const FieldParams& fields,
                             const RVector& v) {
  return mourre_gap_bound(dec, a, b, mourre_commutator(dec.grid, fields, v));
}

void check_disjoint(const BumpFunction& chi, const std::vector<double>& localized_q, double margin) {
  for (double e : localized_q)
    if (e > chi.lo() - margin && e < chi.hi() + margin) {
      std::ostringstream msg;
      msg << "cutoff support [" << chi.lo() << ", " << chi.hi() << "] is within " << margin
          << " of the localized Q-eigenvalue " << e;
      throw SupportOverlapError(msg.str(), e);
    }
}

double lemma7_norm(const SpectralDecomposition& dec, const BumpFunction& chi) {
  std::vector<int> idx;
  for (int k = 0; k < dec.dim(); ++k)
    if (chi(dec.values(k)) != 0.0) idx.push_back(k);
  if (idx.empty()) return 0.0;
  // || U_S diag(chi) U_S* W || = || diag(chi) U_S* W ||
  const RVector w = x_bracket(dec.grid, -2.0);
  CMatrix m = columns(dec.vectors, idx).adjoint() * w.cast<cplx>().asDiagonal();
  for (std::size_t r = 0; r < idx.size(); ++r) m.row(r) *= chi(dec.values(idx[r]));
  return spectral_norm(m);
}

double lemma7_norm(const GridSpec& grid, const FieldParams& fields, const PotentialSpec& spec,
                   const BumpFunction& chi, const Lemma7Options& opt) {
  if (opt.enforce_support) {
    const auto q = assemble_q(grid, {fields.b, 0.0}, spec);
    check_disjoint(chi, localized_eigenvalues(eigendecompose(q, true), opt.loc_margin, opt.degeneracy_tol), opt.support_margin);
  }
  return lemma7_norm(eigendecompose(assemble_h(grid, fields, spec), true), chi);
}

ScalingReport lemma7_sweep(const GridSpec& grid, double b, const PotentialSpec& spec, const BumpFunction& chi,
                           const std::vector<double>& eps_list, const Lemma7Options& opt) {
  if (eps_list.empty()) throw ConfigError("eps_list", "empty sweep");
  if (opt.enforce_support) {
    const auto q = assemble_q(grid, {b, 0.0}, spec);
    check_disjoint(chi, localized_eigenvalues(eigendecompose(q, true), opt.loc_margin, opt.degeneracy_tol), opt.support_margin);
  }
  std::vector<ScalingSample> samples;
  for (double eps : eps_list) {
    if (!(eps > 0)) throw ConfigError("eps_list", "values must be > 0");
    samples.push_back({eps, lemma7_norm(eigendecompose(assemble_h(grid, {b, eps}, spec), true), chi)});
  }
  return fit_loglog(samples);
}

ProbeReport lap_probe(const SpectralDecomposition& dec, double lambda, const WeightSpec& w,
                      const std::vector<double>& deltas) {
  if (deltas.size() < 2) throw ConfigError("deltas", "need at least two values");
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    if (!(deltas[k] >= 1e-6)) throw ConfigError("deltas", "values must be >= 1e-6");
    if (k && !(deltas[k] < deltas[k - 1])) throw ConfigError("deltas", "must be strictly decreasing");
  }
  const DxWeight ws = weight_dx_s(dec.grid, w);
  const CMatrix wu = ws.apply_left(dec.vectors);
  ProbeReport rep;
  rep.lambda = lambda;
  for (double d : deltas) {
    CVector g(dec.dim());
    for (int k = 0; k < dec.dim(); ++k) g(k) = 1.0 / cplx(dec.values(k) - lambda, -d);
    const CMatrix m = scale_columns(wu, g) * wu.adjoint();
    rep.params.push_back(d);
    rep.norms.push_back(spectral_norm(m));
  }
  const auto n = rep.norms.size();
  rep.plateau_ratio = rep.norms[n - 1] / rep.norms[n - 2];
  return rep;
}

double widest_gap_midpoint(const RVector& values, double a, double b) {
  double best = -1, mid = 0.5 * (a + b);
  double prev = a;
  for (Eigen::Index k = 0; k <= values.size(); ++k) {
    const double cur = k < values.size() ? values(k) : b;
    if (cur <= a) continue;
    const double next = std::min(cur, b);
    if (next - prev > best) {
      best = next - prev;
      mid = 0.5 * (prev + next);
    }
    prev = next;
    if (cur >= b) break;
  }
  return mid;
}

LapEpsReport lap_epsilon_law(const GridSpec& grid, double b, const PotentialSpec& spec, const Window& window,
                             const WeightSpec& w, const std::vector<double>& deltas,
                             const std::vector<double>& eps_list) {
  LapEpsReport rep;
  double lo = kInf, hi = 0;
  for (double eps : eps_list) {
    const auto dec = eigendecompose(assemble_h(grid, {b, eps}, spec), true);
    LapEpsRow row;
    row.eps = eps;
    row.lambda = widest_gap_midpoint(dec.values, window.lo, window.hi);
    row.norm = lap_probe(dec, row.lambda, w, deltas).norms.back();
    row.product = row.norm * eps;
    lo = std::min(lo, row.product);
    hi = std::max(hi, row.product);
    rep.rows.push_back(row);
  }
  rep.spread = lo > 0 ? hi / lo : kInf;
  return rep;
}

ScanResult embedded_eigenvalue_scan(const SpectralDecomposition& dec_h, const SpectralDecomposition& dec_q,
                                    const Window& window, double loc_margin, double degeneracy_tol) {
  const auto lq = localized_eigenvalues(dec_q, loc_margin, degeneracy_tol);
  ScanResult out;
  for (double e : localized_eigenvalues(dec_h, loc_margin, degeneracy_tol)) {
    if (e < window.lo || e > window.hi) continue;
    double d = kInf;
    for (double q : lq) d = std::min(d, std::abs(e - q));
    out.rows.push_back({e, d});
    out.max_distance = std::max(out.max_distance, d);
  }
  return out;
}

}  // namespace sslab
