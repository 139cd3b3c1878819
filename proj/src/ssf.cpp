#include "sslab/ssf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sslab/kernels.hpp"
#include "sslab/traces.hpp"

namespace sslab {

namespace {

double trace_of(const BumpFunction& f, const RVector& ev) {
  double s = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) s += f(ev(k));
  return s;
}

// tr(diag(w) f(H)) = sum_k f(lambda_k) sum_i w_i |U_ik|^2
double weighted_trace(const SpectralDecomposition& dec, const RVector& w, const BumpFunction& f) {
  const RVector m = column_weighted_mass(dec.vectors, w);
  double s = 0;
  for (int k = 0; k < dec.dim(); ++k) {
    const double fk = f(dec.values(k));
    if (fk != 0.0) s += fk * m(k);
  }
  return s;
}

}  // namespace

Window resolved_window(const SpectralDecomposition& dec) {
  const double h = std::max(dec.grid.hx, dec.grid.hy);
  const double lo = dec.values.size() ? dec.values(0) : 0.0;
  return {lo, lo + 2.0 / (h * h)};
}

void check_support(const BumpFunction& f, const Window& w, double margin) {
  if (f.lo() < w.lo + margin || f.hi() > w.hi - margin) {
    std::ostringstream msg;
    msg << "support [" << f.lo() << ", " << f.hi() << "] leaves the resolved window [" << w.lo + margin << ", "
        << w.hi - margin << "]";
    throw WindowError(msg.str(), w.lo, w.hi);
  }
}

TraceFormulaReport theorem1_check(const GridSpec& grid, const FieldParams& fields, const PotentialSpec& spec,
                                  const BumpFunction& f, double window_margin) {
  validate(fields);
  if (!(fields.eps > 0)) throw ConfigError("eps", "trace formula needs eps > 0");
  const auto pot = eval_potential(spec, grid);
  const DiscreteOperator h0 = assemble_h0(grid, fields);
  const auto dec0 = eigendecompose(h0, false);
  TraceFormulaReport rep;
  rep.grid = grid;
  rep.h = std::max(grid.hx, grid.hy);
  rep.window = resolved_window(dec0);
  check_support(f, rep.window, window_margin);
  const auto dec = eigendecompose(add_diagonal(h0, pot.v, OperatorRole::H), true);
  rep.lhs = trace_of(f, dec.values) - trace_of(f, dec0.values);
  rep.rhs = -weighted_trace(dec, pot.dx, f) / fields.eps;
  rep.residual = rep.lhs - rep.rhs;
  return rep;
}

CommutatorTrace commutator_trace_zero(const DiscreteOperator& h, const BumpFunction& f) {
  const auto dec = eigendecompose(h, true);
  CVector tf(dec.dim());
  for (int k = 0; k < dec.dim(); ++k) tf(k) = dec.values(k) * f(dec.values(k));
  DiscreteOperator hf;
  hf.grid = h.grid;
  hf.matrix = apply_values(dec, tf);
  CommutatorTrace out;
  out.value = trace(commutator_dx(hf).matrix);
  out.h_norm = dec.dim() ? std::max(std::abs(dec.values(0)), std::abs(dec.values(dec.dim() - 1))) : 0.0;
  out.bound = 1e-10 * dec.dim() * out.h_norm;
  return out;
}

CommutatorTrace commutator_trace_zero(const GridSpec& grid, const FieldParams& fields, const PotentialSpec& spec,
                                      const BumpFunction& f) {
  return commutator_trace_zero(assemble_h(grid, fields, spec), f);
}

double radial_cutoff(double r, double radius) { return 1.0 - smooth_step((r - radius) / radius); }

double radial_cutoff_dr(double r, double radius) {
  const double t = (r - radius) / radius;
  if (t <= 0 || t >= 1) return 0.0;
  const double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
  const double dpsi = a * b * (1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t))) / ((a + b) * (a + b));
  return -dpsi / radius;
}

std::vector<TruncationRow> truncation_convergence(const GridSpec& grid, const FieldParams& fields,
                                                  const PotentialSpec& spec, const BumpFunction& f,
                                                  const std::vector<double>& radii) {
  if (radii.empty()) throw ConfigError("radii", "empty list");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0)) throw ConfigError("radii", "must be positive");
    if (k && !(radii[k] > radii[k - 1])) throw ConfigError("radii", "must be increasing");
  }
  if (radii.back() > 0.5 * std::min(grid.lx, grid.ly) + 1e-12)
    throw GeometryError("largest radius exceeds min(lx, ly)/2; cutoff would reach the wall");
  const auto pot = eval_potential(spec, grid);
  const DiscreteOperator h0 = assemble_h0(grid, fields);
  const auto dec = eigendecompose(add_diagonal(h0, pot.v, OperatorRole::H), true);
  const double tr_h = trace_of(f, dec.values);
  const double comm_h = weighted_trace(dec, pot.dx, f);
  std::vector<TruncationRow> rows;
  for (double radius : radii) {
    RVector v(grid.dim()), dx(grid.dim());
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) {
        const int k = grid.index(i, j);
        const double x = grid.x(i), y = grid.y(j), r = std::hypot(x, y);
        const double chi = radial_cutoff(r, radius);
        const double dchi = r > 0 ? radial_cutoff_dr(r, radius) * x / r : 0.0;
        v(k) = chi * pot.v(k);
        dx(k) = dchi * pot.v(k) + chi * pot.dx(k);
      }
    const auto dr = eigendecompose(add_diagonal(h0, v, OperatorRole::H), true);
    TruncationRow row;
    row.radius = radius;
    row.trace_diff = std::abs(trace_of(f, dr.values) - tr_h);
    row.comm_diff = std::abs(weighted_trace(dr, dx, f) - comm_h);
    rows.push_back(row);
  }
  return rows;
}

RVector xi_prime_mollified(const SpectralDecomposition& dec_h, const SpectralDecomposition& dec_h0,
                           const std::vector<double>& lambdas, double eta) {
  if (!(eta > 0)) throw ConfigError("eta", "mollifier width must be > 0");
  return mollified_difference(dec_h.values, dec_h0.values, lambdas, eta);
}

GapWindow sigma_q_gap_window(const SpectralDecomposition& dec_q, double margin, double loc_margin, double target,
                             double degeneracy_tol) {
  if (!(margin > 0)) throw ConfigError("margin", "gap margin must be > 0");
  const auto loc = localized_eigenvalues(dec_q, loc_margin, degeneracy_tol);
  double best = 0;
  for (std::size_t k = 0; k + 1 < loc.size(); ++k) {
    const double lo = loc[k], hi = loc[k + 1];
    const double half = 0.5 * (hi - lo);
    if (!std::isnan(target) && !(target > lo && target < hi)) continue;
    best = std::max(best, half);
    if (half > margin) return {lo + margin, hi - margin, lo, hi};
    if (!std::isnan(target)) break;
  }
  std::ostringstream msg;
  msg << "no gap in the localized spectrum admits margin " << margin << "; largest available margin " << best;
  throw GapNotFoundError(msg.str(), best);
}

ScalingReport fit_loglog(const std::vector<ScalingSample>& samples) {
  ScalingReport rep;
  rep.samples = samples;
  for (const auto& s : samples)
    if (!(std::abs(s.value) >= kUnderflow)) rep.underflow = true;
  if (rep.underflow || samples.size() < 2) return rep;
  const double n = static_cast<double>(samples.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& s : samples) {
    const double x = std::log(s.eps), y = std::log(std::abs(s.value));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double cxx = sxx - sx * sx / n, cxy = sxy - sx * sy / n, cyy = syy - sy * sy / n;
  rep.slope = cxy / cxx;
  rep.intercept = (sy - rep.slope * sx) / n;
  rep.r2 = cyy > 0 ? cxy * cxy / (cxx * cyy) : 1.0;
  rep.defined = true;
  return rep;
}

ScalingReport epsilon_scaling(const GridSpec& grid, double b, const PotentialSpec& spec, const BumpFunction& f,
                              const std::vector<double>& eps_list, const ScalingOptions& opt) {
  if (eps_list.empty()) throw ConfigError("eps_list", "empty sweep");
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    if (!(eps_list[k] > 0)) throw ConfigError("eps_list", "values must be > 0");
    if (k && !(eps_list[k] < eps_list[k - 1])) throw ConfigError("eps_list", "must be strictly decreasing");
  }
  const auto cert = certify_decay(spec, grid, EnvelopeKind::decay_n);
  if (!cert.pass) throw DecayCertificateError("potential fails its declared n-decay envelope");
  const auto pot = eval_potential(spec, grid);
  FieldParams f0{b, 0.0};
  const auto q = assemble_q(grid, f0, spec);
  const auto win = sigma_q_gap_window(eigendecompose(q, true), opt.gap_margin, opt.loc_margin, f.center, opt.degeneracy_tol);
  if (f.lo() < win.a || f.hi() > win.b)
    throw WindowError("test function support leaves the gap window of Q", win.a, win.b);
  std::vector<ScalingSample> samples;
  for (double eps : eps_list) {
    const FieldParams fe{b, eps};
    const DiscreteOperator h0 = assemble_h0(grid, fe);
    const auto e0 = eigendecompose(h0, false);
    const auto e1 = eigendecompose(add_diagonal(h0, pot.v, OperatorRole::H), false);
    samples.push_back({eps, trace_of(f, e1.values) - trace_of(f, e0.values)});
  }
  return fit_loglog(samples);
}

double resolvent_expansion_check(const DiscreteOperator& q, double eps, cplx z, int n) {
  if (n < 0) throw ConfigError("n", "order must be >= 0");
  const RVector x = position_values(q.grid, Axis::x, 1);
  DiscreteOperator h = add_diagonal(q, eps * x, OperatorRole::H);
  const CMatrix rq = resolvent(q, z), rh = resolvent(h, z);
  const CMatrix a = rq * x.cast<cplx>().asDiagonal();
  CMatrix sum = CMatrix::Zero(q.dim(), q.dim());
  CMatrix ak = CMatrix::Identity(q.dim(), q.dim());
  double ek = 1.0;
  for (int k = 0; k < n; ++k) {
    sum += ek * (ak * rq);
    ak = ak * a;
    ek *= eps;
  }
  sum += ek * (ak * rh);
  return max_abs(rh - sum);
}

}  // namespace sslab
