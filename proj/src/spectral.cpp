#include "sslab/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "sslab/kernels.hpp"
#include "sslab/linalg.hpp"

namespace sslab {

namespace {
int g_dense_limit = kDenseLimit;
}

int dense_limit() noexcept { return g_dense_limit; }

void set_dense_limit(int n) {
  if (n < 1) throw ConfigError("dense_limit", "must be positive");
  g_dense_limit = n;
}

CMatrix SpectralDecomposition::reconstruct() const {
  return scale_columns(vectors, values.cast<cplx>()) * vectors.adjoint();
}

double SpectralDecomposition::orthonormality_defect() const {
  const CMatrix g = vectors.adjoint() * vectors;
  return max_abs(g - CMatrix::Identity(g.rows(), g.cols()));
}

SpectralDecomposition eigendecompose(const CMatrix& m, bool vectors, int limit) {
  if (m.rows() != m.cols()) throw ConfigError("operator", "not square");
  const int dense_limit = limit > 0 ? limit : g_dense_limit;
  if (m.rows() > dense_limit)
    throw CapacityError("operator dimension " + std::to_string(m.rows()) + " exceeds the dense limit " +
                        std::to_string(dense_limit) + "; use a coarser grid or an iterative solver");
  const double scale = max_abs(m);
  if (scale > 0 && max_abs(m - m.adjoint()) > 1e-12 * scale)
    throw ConfigError("operator", "not Hermitian");
  SpectralDecomposition dec;
  CMatrix a = m;
  dec.values = hermitian_eig(a, vectors);
  if (vectors) dec.vectors = std::move(a);
  return dec;
}

SpectralDecomposition eigendecompose(const DiscreteOperator& op, bool vectors, int dense_limit) {
  auto dec = eigendecompose(op.matrix, vectors, dense_limit);
  dec.grid = op.grid;
  dec.role = op.role;
  return dec;
}

double smooth_step(double t) {
  if (t <= 0) return 0.0;
  if (t >= 1) return 1.0;
  const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double BumpFunction::operator()(double t) const {
  const double d = std::abs(t - center);
  if (d >= halfwidth) return 0.0;
  if (core > 0) {
    if (d <= core) return scale;
    return scale * (1.0 - smooth_step((d - core) / (halfwidth - core)));
  }
  const double u = d / halfwidth;
  return scale * std::exp(1.0 - 1.0 / (1.0 - u * u));
}

BumpFunction make_bump(double center, double halfwidth, double scale) {
  if (!(halfwidth > 0)) throw ConfigError("halfwidth", "must be > 0");
  BumpFunction f;
  f.center = center;
  f.halfwidth = halfwidth;
  f.scale = scale;
  return f;
}

BumpFunction make_plateau(double center, double halfwidth, double core) {
  if (!(halfwidth > 0)) throw ConfigError("halfwidth", "must be > 0");
  if (!(core > 0) || !(core < halfwidth)) throw ConfigError("core", "plateau core must lie in (0, halfwidth)");
  BumpFunction f;
  f.center = center;
  f.halfwidth = halfwidth;
  f.core = core;
  return f;
}

RVector sample(const BumpFunction& f, const RVector& t) {
  RVector out(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) out(i) = f(t(i));
  return out;
}

CMatrix apply_values(const SpectralDecomposition& dec, const CVector& f) {
  const int n = dec.dim();
  if (!dec.has_vectors()) throw ConfigError("decomposition", "eigenvectors required");
  std::vector<int> sel;
  for (int k = 0; k < n; ++k)
    if (f(k) != cplx(0)) sel.push_back(k);
  if (sel.empty()) return CMatrix::Zero(n, n);
  CMatrix us(n, sel.size());
  CVector fs(sel.size());
  for (std::size_t c = 0; c < sel.size(); ++c) {
    us.col(c) = dec.vectors.col(sel[c]);
    fs(c) = f(sel[c]);
  }
  return scale_columns(us, fs) * us.adjoint();
}

CMatrix apply_function(const SpectralDecomposition& dec, const BumpFunction& f) {
  return apply_values(dec, sample(f, dec.values).cast<cplx>());
}

std::vector<int> indices_in(const SpectralDecomposition& dec, double a, double b) {
  std::vector<int> idx;
  for (int k = 0; k < dec.dim(); ++k)
    if (dec.values(k) > a && dec.values(k) <= b) idx.push_back(k);
  return idx;
}

Projector spectral_projector(const SpectralDecomposition& dec, double a, double b) {
  if (!(a < b)) throw ConfigError("interval", "need a < b");
  CVector f = CVector::Zero(dec.dim());
  Projector p;
  for (int k : indices_in(dec, a, b)) f(k) = 1.0;
  p.rank = static_cast<int>(f.real().sum());
  p.empty = p.rank == 0;
  p.p = apply_values(dec, f);
  return p;
}

CMatrix DxWeight::dense() const { return kron_x(grid, factor); }

CMatrix DxWeight::apply_left(const CMatrix& m) const {
  CMatrix out(m.rows(), m.cols());
  for (int j = 0; j < grid.ny; ++j) out.middleRows(j * grid.nx, grid.nx).noalias() = factor * m.middleRows(j * grid.nx, grid.nx);
  return out;
}

CMatrix DxWeight::apply_right(const CMatrix& m) const {
  CMatrix out(m.rows(), m.cols());
  for (int j = 0; j < grid.ny; ++j) out.middleCols(j * grid.nx, grid.nx).noalias() = m.middleCols(j * grid.nx, grid.nx) * factor;
  return out;
}

DxWeight dx_bracket(const GridSpec& grid, double e) {
  const RMatrix d2 = d2_op(grid.nx, grid.hx).real();
  Eigen::SelfAdjointEigenSolver<RMatrix> es(d2);
  RVector mu = es.eigenvalues();
  for (Eigen::Index k = 0; k < mu.size(); ++k) mu(k) = std::pow(1.0 + mu(k), 0.5 * e);
  const RMatrix& v = es.eigenvectors();
  DxWeight w;
  w.grid = grid;
  w.factor = (v * mu.asDiagonal() * v.transpose()).cast<cplx>();
  return w;
}

DxWeight weight_dx_s(const GridSpec& grid, const WeightSpec& w) {
  if (!(w.s > 0.5 && w.s < 1.0)) throw ConfigError("s", "weight exponent must lie in (1/2, 1)");
  return dx_bracket(grid, -w.s);
}

RVector x_bracket(const GridSpec& grid, double p) {
  RVector x = position_values(grid, Axis::x, 1);
  for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = std::pow(1.0 + x(k) * x(k), 0.5 * p);
  return x;
}

RVector k_weight(const GridSpec& grid, int j, double delta) {
  if (!(delta > 0)) throw ConfigError("delta", "must be > 0");
  RVector k(grid.dim());
  for (int jj = 0; jj < grid.ny; ++jj)
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i), y = grid.y(jj);
      k(grid.index(i, jj)) = std::pow(1.0 + x * x, -0.5 * j * (1.0 + delta)) *
                             std::pow(1.0 + y * y, -0.5 * j * (0.5 + delta));
    }
  return k;
}

RVector subbox_mask(const GridSpec& grid, double margin) {
  if (!(margin > 0 && margin < 0.5)) throw ConfigError("margin", "localization margin must lie in (0, 0.5)");
  const double ax = (1.0 - 2.0 * margin) * grid.lx, ay = (1.0 - 2.0 * margin) * grid.ly;
  RVector m(grid.dim());
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      m(grid.index(i, j)) = (std::abs(grid.x(i)) <= ax + 1e-12 && std::abs(grid.y(j)) <= ay + 1e-12) ? 1.0 : 0.0;
  return m;
}

std::vector<LocalizedState> localized_spectrum(const SpectralDecomposition& dec, double margin,
                                               double degeneracy_tol) {
  if (!dec.has_vectors()) throw ConfigError("decomposition", "eigenvectors required");
  const RVector mask = subbox_mask(dec.grid, margin);
  const RVector mass = column_weighted_mass(dec.vectors, mask);
  const int n = dec.dim();
  std::vector<LocalizedState> out(n);
  for (int k = 0; k < n; ++k) {
    out[k].index = k;
    out[k].eigenvalue = dec.values(k);
    out[k].score = mass(k);
  }
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && dec.values(end) - dec.values(end - 1) < degeneracy_tol) ++end;
    const int m = end - start;
    if (m > 1) {
      const CMatrix ug = dec.vectors.middleCols(start, m);
      CMatrix g = ug.adjoint() * (mask.cast<cplx>().asDiagonal() * ug);
      g = 0.5 * (g + g.adjoint()).eval();
      const RVector w = hermitian_eig(g, true);
      const RVector lam = dec.values.segment(start, m);
      for (int c = 0; c < m; ++c) {
        // ascending masses; keep the eigen-index slots in order
        out[start + c].score = w(c);
        out[start + c].eigenvalue = g.col(c).cwiseAbs2().dot(lam);
      }
    }
    start = end;
  }
  for (auto& s : out) s.localized = s.score > kLocalizationThreshold;
  return out;
}

std::vector<double> localized_eigenvalues(const SpectralDecomposition& dec, double margin, double degeneracy_tol) {
  std::vector<double> v;
  for (const auto& s : localized_spectrum(dec, margin, degeneracy_tol))
    if (s.localized) v.push_back(s.eigenvalue);
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Cluster> cluster_levels(const std::vector<double>& sorted, double gap) {
  std::vector<Cluster> out;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (out.empty() || sorted[k] - sorted[k - 1] > gap) out.push_back({sorted[k], sorted[k], 0.0, 0});
    Cluster& c = out.back();
    c.hi = sorted[k];
    c.mean += sorted[k];
    ++c.count;
  }
  for (auto& c : out) c.mean /= c.count;
  return out;
}

}  // namespace sslab
