#pragma once

#include <vector>

#include "sslab/spectral.hpp"

namespace sslab {

cplx trace(const CMatrix& m);
double frobenius_norm(const CMatrix& m);
double nuclear_norm(const CMatrix& m);
double spectral_norm(const CMatrix& m);

// (z - M)^-1 by LU. For |Im z| below 1e-12 the spectrum is checked first and a
// NearSingularityError is thrown within 1e-8 of an eigenvalue.
CMatrix resolvent(const DiscreteOperator& op, cplx z);
// Same operator from a decomposition: U diag(1/(z - lambda)) U*.
CMatrix resolvent(const SpectralDecomposition& dec, cplx z);
CVector resolvent_values(const SpectralDecomposition& dec, cplx z);

struct ProbeSpec {
  cplx z{0.0, 0.5}, zp{0.0, 0.5};
  std::vector<double> deltas{0.5, 0.25, 0.125};
};

// Probe points for sweep step k: real parts kept, |Im| replaced by deltas[k].
cplx probe_point(cplx z, double delta);
void validate(const ProbeSpec& p);

struct Prop2Row {
  double delta = 0;
  cplx z, zp;
  double nuclear = 0;
  double product = 0;  // |Im z| |Im z'| * nuclear
};

struct Prop2Report {
  std::vector<Prop2Row> rows;
  double max_min_ratio = 0;  // 0 when every product vanishes
};

// || (z - H)^-1 V (z' - H)^-1 ||_1
double resolvent_sandwich_nuclear(const SpectralDecomposition& dec_h, const RVector& v, cplx z, cplx zp);
Prop2Report prop2_tracebound(const SpectralDecomposition& dec_h, const RVector& v, const ProbeSpec& probe);

struct AppendixNorms {
  double hs1 = 0;  // || k1 (H0 + i)^-1 ||_HS
  double tr2 = 0;  // || k2 (H0 + i)^-2 ||_1
};

AppendixNorms appendix_norms(const SpectralDecomposition& dec_h0, const WeightSpec& w);
AppendixNorms appendix_norms(const DiscreteOperator& h0, const WeightSpec& w);

struct GapCheck {
  std::vector<double> localized;  // localized eigenvalues of Q
  double margin = 0.3;
};

// || <Dx>^s diag(dxv) [(z - Q)^-1 X]^n <Dx>^s ||_1
double prop4_norm(const SpectralDecomposition& dec_q, const RVector& dxv, int n, const WeightSpec& w, cplx z,
                  const GapCheck& gap);

}  // namespace sslab
