#include "sslab/traces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sslab/kernels.hpp"
#include "sslab/linalg.hpp"

namespace sslab {

cplx trace(const CMatrix& m) { return m.diagonal().sum(); }

double frobenius_norm(const CMatrix& m) { return m.norm(); }

double nuclear_norm(const CMatrix& m) { return singular_values(m).sum(); }

double spectral_norm(const CMatrix& m) {
  const RVector s = singular_values(m);
  return s.size() ? s(0) : 0.0;
}

CMatrix resolvent(const DiscreteOperator& op, cplx z) {
  const int n = op.dim();
  if (std::abs(z.imag()) < 1e-12) {
    CMatrix a = op.matrix;
    const RVector ev = hermitian_eig(a, false);
    for (Eigen::Index k = 0; k < ev.size(); ++k)
      if (std::abs(ev(k) - z.real()) <= 1e-8)
        throw NearSingularityError("resolvent requested within 1e-8 of an eigenvalue", ev(k));
  }
  CMatrix a = -op.matrix;
  a.diagonal().array() += z;
  return a.partialPivLu().solve(CMatrix::Identity(n, n));
}

CVector resolvent_values(const SpectralDecomposition& dec, cplx z) {
  CVector g(dec.dim());
  for (int k = 0; k < dec.dim(); ++k) {
    const cplx d = z - dec.values(k);
    if (std::abs(d) <= 1e-8) throw NearSingularityError("resolvent requested within 1e-8 of an eigenvalue", dec.values(k));
    g(k) = 1.0 / d;
  }
  return g;
}

CMatrix resolvent(const SpectralDecomposition& dec, cplx z) {
  return scale_columns(dec.vectors, resolvent_values(dec, z)) * dec.vectors.adjoint();
}

cplx probe_point(cplx z, double delta) { return {z.real(), z.imag() < 0 ? -delta : delta}; }

void validate(const ProbeSpec& p) {
  if (p.deltas.empty()) throw ConfigError("deltas", "sweep list is empty");
  for (std::size_t k = 0; k < p.deltas.size(); ++k) {
    if (!(p.deltas[k] > 0)) throw ConfigError("deltas", "imaginary parts must be nonzero");
    if (k && !(p.deltas[k] < p.deltas[k - 1])) throw ConfigError("deltas", "must be strictly decreasing");
  }
}

double resolvent_sandwich_nuclear(const SpectralDecomposition& dec, const RVector& v, cplx z, cplx zp) {
  // U* (z-H)^-1 V (z'-H)^-1 U = diag(a) U* V U diag(b)
  if (v.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const CMatrix vt = dec.vectors.adjoint() * (v.cast<cplx>().asDiagonal() * dec.vectors);
  const CVector a = resolvent_values(dec, z), b = resolvent_values(dec, zp);
  return nuclear_norm(a.asDiagonal() * vt * b.asDiagonal());
}

Prop2Report prop2_tracebound(const SpectralDecomposition& dec, const RVector& v, const ProbeSpec& probe) {
  validate(probe);
  Prop2Report rep;
  const bool zero = v.size() == 0 || v.cwiseAbs().maxCoeff() == 0.0;
  CMatrix vt;
  if (!zero) vt = dec.vectors.adjoint() * (v.cast<cplx>().asDiagonal() * dec.vectors);
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  for (double d : probe.deltas) {
    Prop2Row r;
    r.delta = d;
    r.z = probe_point(probe.z, d);
    r.zp = probe_point(probe.zp, d);
    if (!zero) {
      const CVector a = resolvent_values(dec, r.z), b = resolvent_values(dec, r.zp);
      r.nuclear = nuclear_norm(a.asDiagonal() * vt * b.asDiagonal());
    }
    r.product = std::abs(r.z.imag()) * std::abs(r.zp.imag()) * r.nuclear;
    lo = std::min(lo, r.product);
    hi = std::max(hi, r.product);
    rep.rows.push_back(r);
  }
  rep.max_min_ratio = hi > 0 ? hi / lo : 0.0;
  return rep;
}

AppendixNorms appendix_norms(const SpectralDecomposition& dec, const WeightSpec& w) {
  const RVector k1 = k_weight(dec.grid, 1, w.delta), k2 = k_weight(dec.grid, 2, w.delta);
  const CVector g1 = resolvent_values(dec, cplx(0.0, -1.0)) * -1.0;  // 1/(lambda + i)
  const CVector g2 = g1.cwiseProduct(g1);
  // right factor U* is unitary and drops out of both norms
  AppendixNorms out;
  out.hs1 = frobenius_norm(k1.cast<cplx>().asDiagonal() * scale_columns(dec.vectors, g1));
  out.tr2 = nuclear_norm(k2.cast<cplx>().asDiagonal() * scale_columns(dec.vectors, g2));
  return out;
}

AppendixNorms appendix_norms(const DiscreteOperator& h0, const WeightSpec& w) {
  return appendix_norms(eigendecompose(h0), w);
}

double prop4_norm(const SpectralDecomposition& dec, const RVector& dxv, int n, const WeightSpec& w, cplx z,
                  const GapCheck& gap) {
  if (n < 2) throw ConfigError("n", "power must be >= 2");
  const double smax = std::min(0.5 + w.delta / 4.0, 1.0);
  if (!(w.s > 0.5 && w.s < smax))
    throw ConfigError("s", "weight exponent must lie in (1/2, " + std::to_string(smax) + ")");
  if (std::abs(z.imag()) < 1e-12) {
    for (double e : gap.localized)
      if (std::abs(e - z.real()) < gap.margin)
        throw NearSingularityError("probe point closer than the gap margin to the localized spectrum", e);
  }
  if (dxv.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const RVector x = position_values(dec.grid, Axis::x, 1);
  const CMatrix rx = resolvent(dec, z) * x.cast<cplx>().asDiagonal();
  CMatrix m = rx;
  for (int k = 1; k < n; ++k) m = m * rx;
  m = dxv.cast<cplx>().asDiagonal() * m;
  const DxWeight ws = dx_bracket(dec.grid, w.s);
  return nuclear_norm(ws.apply_right(ws.apply_left(m)));
}

}  // namespace sslab
