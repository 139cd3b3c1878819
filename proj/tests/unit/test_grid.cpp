#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sslab/grid.hpp"

using namespace sslab;

TEST_CASE("make_grid validates and sets spacings") {
  try {
    make_grid(1, 1, 3, 3);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "nx");
  }
  CHECK_THROWS_AS(make_grid(0, 1, 10, 10), ConfigError);
  CHECK_THROWS_AS(make_grid(1, -1, 10, 10), ConfigError);
  CHECK_THROWS_AS(make_grid(1, 1, 10, 7), ConfigError);

  auto g = make_grid(10, 10, 21, 21);
  CHECK(g.hx == 1.0);
  CHECK(g.hy == 1.0);
  g = make_grid(12, 12, 49, 49);
  CHECK(g.hx == 0.5);
  CHECK(g.hy == 0.5);
  CHECK(g.dim() == 49 * 49);
  CHECK(g.index(3, 2) == 2 * 49 + 3);
  CHECK(g.x(0) == -12.0);
  CHECK(g.y(48) == doctest::Approx(12.0));
}

TEST_CASE("d1 stencil") {
  const int n = 8;
  const double h = 0.3;
  CMatrix d = d1_op(n, h);
  CHECK(max_abs(d - d.adjoint()) == 0.0);
  CHECK(d(0, 1) == cplx(0, -1.0 / (2 * h)));
  CHECK(d(1, 0) == cplx(0, 1.0 / (2 * h)));

  CVector ones = CVector::Ones(n);
  CVector r = d * ones;
  for (int k = 1; k < n - 1; ++k) CHECK(std::abs(r(k)) == 0.0);
}

TEST_CASE("d1 on sin(kx) is second order") {
  const double k = 1.3, l = 3.0;
  double err[2];
  int ns[2] = {61, 121};
  for (int t = 0; t < 2; ++t) {
    const int n = ns[t];
    const double h = 2 * l / (n - 1);
    CVector f(n);
    for (int i = 0; i < n; ++i) f(i) = std::sin(k * (-l + i * h));
    CVector df = d1_op(n, h) * f;
    double e = 0;
    for (int i = 1; i < n - 1; ++i) {
      const cplx want(0, -k * std::cos(k * (-l + i * h)));
      e = std::max(e, std::abs(df(i) - want));
    }
    err[t] = e;
  }
  const double order = std::log2(err[0] / err[1]);
  CHECK(order > 1.9);
  CHECK(order < 2.1);
}

TEST_CASE("d2 closed-form spectrum") {
  const int n = 12;
  const double h = 0.25;
  CMatrix d2 = d2_op(n, h);
  CHECK(max_abs(d2 - d2.adjoint()) == 0.0);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(d2);
  for (int j = 1; j <= n; ++j) {
    const double want = (2 - 2 * std::cos(j * std::numbers::pi / (n + 1))) / (h * h);
    CHECK(es.eigenvalues()(j - 1) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("d2 continuum limit and sign convention") {
  const double l = 2.0;
  double prev = 0;
  for (int n : {41, 81, 161}) {
    const double h = 2 * l / (n + 1);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(d2_op(n, h), Eigen::EigenvaluesOnly);
    const double want = std::pow(std::numbers::pi / (2 * l), 2);
    const double e = std::abs(es.eigenvalues()(0) - want);
    if (prev > 0) CHECK(e < prev / 3.5);
    prev = e;
  }
  const int n = 20;
  const double h = 0.1;
  CVector f(n);
  for (int i = 0; i < n; ++i) f(i) = std::pow(i * h - 1.0, 2);
  CVector r = d2_op(n, h) * f;
  for (int i = 1; i < n - 1; ++i) CHECK(r(i).real() == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("position operators") {
  auto g = make_grid(2, 1, 9, 8);
  auto x0 = position_op(g, Axis::x, 0);
  CHECK(max_abs(x0.matrix - CMatrix::Identity(g.dim(), g.dim())) == 0.0);
  auto x = position_op(g, Axis::x, 1);
  CHECK(x.matrix(0, 0).real() == -2.0);
  auto y = position_op(g, Axis::y, 1);
  CHECK(max_abs(x.matrix * y.matrix - y.matrix * x.matrix) == 0.0);
  RVector y2 = position_values(g, Axis::y, 2);
  CHECK(y2(g.index(4, 0)) == 1.0);
}

TEST_CASE("kronecker factors") {
  auto g = make_grid(2, 1.5, 9, 8);
  CMatrix dx = kron_x(g, d1_op(g.nx, g.hx));
  CMatrix dy2 = kron_y(g, d2_op(g.ny, g.hy));
  CHECK(max_abs(dx - dx.adjoint()) == 0.0);
  CHECK(max_abs(dy2 - dy2.adjoint()) == 0.0);
  CHECK(max_abs(dx * dy2 - dy2 * dx) == 0.0);
  // d1 commutes with functions of y
  CMatrix fy = CMatrix::Zero(g.dim(), g.dim());
  RVector y = position_values(g, Axis::y, 1);
  for (int k = 0; k < g.dim(); ++k) fy(k, k) = std::exp(y(k)) + y(k) * y(k);
  CHECK(max_abs(dx * fy - fy * dx) == 0.0);
}

TEST_CASE("discrete product rule [D, X] converges to -i") {
  double prev = -1;
  for (int nx : {21, 41, 81}) {
    auto g = make_grid(1, 1, nx, 8);
    CMatrix dx = kron_x(g, d1_op(g.nx, g.hx));
    CMatrix x = position_op(g, Axis::x, 1).matrix;
    CMatrix c = dx * x - x * dx;
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 1; i < g.nx - 1; ++i) {
        const int r = g.index(i, j);
        CHECK(std::abs(c(r, r + 1) - cplx(0, -0.5)) < 1e-12);
        CHECK(std::abs(c(r, r - 1) - cplx(0, -0.5)) < 1e-12);
        CHECK(std::abs(c.row(r).sum() - cplx(0, -1)) < 1e-12);
      }
    }
    // applied to a smooth profile the averaging stencil is O(h^2) off -i
    CVector f(g.dim());
    for (int k = 0; k < g.dim(); ++k) f(k) = std::cos(position_values(g, Axis::x, 1)(k));
    CVector cf = c * f;
    double e = 0;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 1; i < g.nx - 1; ++i) e = std::max(e, std::abs(cf(g.index(i, j)) - cplx(0, -1) * f(g.index(i, j))));
    if (prev > 0) CHECK(std::log2(prev / e) > 1.8);
    prev = e;
  }
}
