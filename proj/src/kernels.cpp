#include "sslab/kernels.hpp"

#include <cmath>
#include <numbers>

#include <omp.h>

namespace sslab {

namespace {

Exec g_exec = Exec::parallel;

// column c of D*M, written into out
void dx_left_column(const GridSpec& g, const CMatrix& m, CMatrix& out, Eigen::Index c) {
  const cplx a(0.0, 1.0 / (2.0 * g.hx));
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const int r = g.index(i, j);
      cplx s = 0.0;
      if (i + 1 < g.nx) s -= a * m(r + 1, c);
      if (i > 0) s += a * m(r - 1, c);
      out(r, c) = s;
    }
  }
}

void dx_right_column(const GridSpec& g, const CMatrix& m, CMatrix& out, int c) {
  const cplx a(0.0, 1.0 / (2.0 * g.hx));
  const int i = c % g.nx;
  if (i > 0 && i + 1 < g.nx)
    out.col(c) = -a * m.col(c - 1) + a * m.col(c + 1);
  else if (i > 0)
    out.col(c) = -a * m.col(c - 1);
  else
    out.col(c) = a * m.col(c + 1);
}

}  // namespace

Exec default_exec() noexcept { return g_exec; }
void set_default_exec(Exec e) noexcept { g_exec = e; }

void set_thread_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

CMatrix apply_dx_left(const GridSpec& grid, const CMatrix& m, Exec e) {
  CMatrix out(m.rows(), m.cols());
  const Eigen::Index nc = m.cols();
  if (e == Exec::serial) {
    for (Eigen::Index c = 0; c < nc; ++c) dx_left_column(grid, m, out, c);
  } else {
#pragma omp parallel for schedule(static)
    for (Eigen::Index c = 0; c < nc; ++c) dx_left_column(grid, m, out, c);
  }
  return out;
}

CMatrix apply_dx_right(const GridSpec& grid, const CMatrix& m, Exec e) {
  CMatrix out(m.rows(), m.cols());
  const int nc = static_cast<int>(m.cols());
  if (e == Exec::serial) {
    for (int c = 0; c < nc; ++c) dx_right_column(grid, m, out, c);
  } else {
#pragma omp parallel for schedule(static)
    for (int c = 0; c < nc; ++c) dx_right_column(grid, m, out, c);
  }
  return out;
}

cplx trace_product(const CMatrix& a, const CMatrix& b, Exec e) {
  // partial k = sum_i A_ik B_ki = (column k of A) . (row k of B)
  const Eigen::Index n = a.cols();
  std::vector<cplx> part(n);
  auto body = [&](Eigen::Index k) {
    cplx s = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) s += a(i, k) * b(k, i);
    part[k] = s;
  };
  if (e == Exec::serial) {
    for (Eigen::Index k = 0; k < n; ++k) body(k);
  } else {
#pragma omp parallel for schedule(static)
    for (Eigen::Index k = 0; k < n; ++k) body(k);
  }
  cplx t = 0.0;
  for (const auto& p : part) t += p;
  return t;
}

RVector column_weighted_mass(const CMatrix& u, const RVector& w, Exec e) {
  const Eigen::Index n = u.cols();
  RVector out(n);
  auto body = [&](Eigen::Index k) {
    double s = 0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) s += w(i) * std::norm(u(i, k));
    out(k) = s;
  };
  if (e == Exec::serial) {
    for (Eigen::Index k = 0; k < n; ++k) body(k);
  } else {
#pragma omp parallel for schedule(static)
    for (Eigen::Index k = 0; k < n; ++k) body(k);
  }
  return out;
}

CMatrix scale_columns(const CMatrix& u, const CVector& s, Exec e) {
  CMatrix out(u.rows(), u.cols());
  const Eigen::Index n = u.cols();
  if (e == Exec::serial) {
    for (Eigen::Index k = 0; k < n; ++k) out.col(k) = u.col(k) * s(k);
  } else {
#pragma omp parallel for schedule(static)
    for (Eigen::Index k = 0; k < n; ++k) out.col(k) = u.col(k) * s(k);
  }
  return out;
}

RVector mollified_difference(const RVector& eig1, const RVector& eig0, const std::vector<double>& lambdas,
                             double eta, Exec e) {
  const auto n = static_cast<Eigen::Index>(lambdas.size());
  RVector out(n);
  const double norm = 1.0 / (eta * std::sqrt(2.0 * std::numbers::pi));
  auto body = [&](Eigen::Index k) {
    const double l = lambdas[k];
    double s = 0;
    for (Eigen::Index i = 0; i < eig1.size(); ++i) {
      const double t = (l - eig1(i)) / eta;
      s += std::exp(-0.5 * t * t);
    }
    for (Eigen::Index i = 0; i < eig0.size(); ++i) {
      const double t = (l - eig0(i)) / eta;
      s -= std::exp(-0.5 * t * t);
    }
    out(k) = norm * s;
  };
  if (e == Exec::serial) {
    for (Eigen::Index k = 0; k < n; ++k) body(k);
  } else {
#pragma omp parallel for schedule(static)
    for (Eigen::Index k = 0; k < n; ++k) body(k);
  }
  return out;
}

}  // namespace sslab
