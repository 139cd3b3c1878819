#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sslab/hamiltonian.hpp"
#include "sslab/spectral.hpp"

using namespace sslab;

namespace {

const PotentialSpec kZero = make_potential(PotentialFamily::zero, 0.0);

}  // namespace

TEST_CASE("field validation") {
  CHECK_THROWS_AS(validate(FieldParams{0.0, 0.5}), ConfigError);
  CHECK_THROWS_AS(validate(FieldParams{1.0, -0.1}), ConfigError);
  CHECK_NOTHROW(validate(FieldParams{1.0, 0.0}));
}

TEST_CASE("assembled operators are Hermitian") {
  auto g = make_grid(4, 3, 17, 13);
  auto v = make_potential(PotentialFamily::gaussian, 0.7, 2, 0.5, 1.5);
  FieldParams f{1.3, 0.4};
  CHECK(assemble_h0(g, f).hermiticity_defect() == 0.0);
  CHECK(assemble_h(g, f, v).hermiticity_defect() == 0.0);
  CHECK(assemble_q(g, f, v).hermiticity_defect() == 0.0);
  CHECK(assemble_h0(g, f).role == OperatorRole::H0);
  CHECK(assemble_q(g, f, kZero).role == OperatorRole::Q0);
  CHECK(assemble_q(g, f, v).role == OperatorRole::Q);
  CHECK(assemble_h(g, f, v).role == OperatorRole::H);
}

TEST_CASE("linearity in eps and V") {
  auto g = make_grid(4, 3, 17, 13);
  auto h1 = assemble_h0(g, {1.0, 1.0});
  auto h0 = assemble_h0(g, {1.0, 0.0});
  CMatrix x = position_op(g, Axis::x, 1).matrix;
  // equal up to the rounding of one addition on the diagonal
  CHECK(max_abs(h1.matrix - x - h0.matrix) <= 4 * 1e-16 * max_abs(h1.matrix));
  CHECK(max_abs((h1.matrix - h0.matrix).diagonal().asDiagonal().toDenseMatrix() - (h1.matrix - h0.matrix)) == 0.0);

  auto v = make_potential(PotentialFamily::separable_power, 0.8, 3, 0.5);
  FieldParams f{1.0, 0.3};
  auto q = assemble_q(g, f, v), q0 = assemble_q(g, f, kZero);
  auto h = assemble_h(g, f, v), hz = assemble_h(g, f, kZero);
  CHECK(max_abs(q0.matrix - assemble_q(g, f, make_potential(PotentialFamily::gaussian, 0.0)).matrix) == 0.0);
  CHECK(max_abs(hz.matrix - assemble_h0(g, f).matrix) == 0.0);
  RVector vv = eval_potential(v, g).v;
  CMatrix dq = q.matrix - q0.matrix;
  for (int r = 0; r < g.dim(); ++r)
    for (int c = 0; c < g.dim(); ++c) {
      if (r == c)
        CHECK(std::abs(dq(r, c) - vv(r)) <= 1e-15 * (1 + max_abs(q.matrix)));
      else
        CHECK(dq(r, c) == cplx(0));
    }
  CHECK(max_abs(h.matrix - q.matrix - f.eps * x) <= 1e-14 * max_abs(h.matrix));
  auto v3 = v;
  v3.amplitude *= 3;
  CMatrix lin = assemble_h(g, f, v3).matrix - hz.matrix;
  CHECK(max_abs(lin - CMatrix(3.0 * vv.cast<cplx>().asDiagonal())) <= 1e-14 * max_abs(h.matrix));
}

TEST_CASE("lowest localized Landau level near B") {
  auto g = make_grid(4, 4, 41, 41);
  auto dec = eigendecompose(assemble_q(g, {1.0, 0.0}, kZero));
  auto loc = localized_eigenvalues(dec, 0.1, 5e-2);
  REQUIRE_FALSE(loc.empty());
  CHECK(loc.front() == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("attractive impurity binds below the first level") {
  auto g = make_grid(4, 4, 41, 41);
  auto v = make_potential(PotentialFamily::gaussian, -0.4, 2, 0.5, 1.0);
  auto loc = localized_eigenvalues(eigendecompose(assemble_q(g, {1.0, 0.0}, v)), 0.1, 5e-2);
  REQUIRE_FALSE(loc.empty());
  CHECK(loc.front() < 1.0);
}

TEST_CASE("commutator with zero potential is eps times averaging") {
  auto g = make_grid(3, 2, 25, 17);
  FieldParams f{1.0, 0.5};
  auto c = commutator_dx(assemble_h0(g, f));
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (g.wall_distance(i, j) < 2) continue;
      const int r = g.index(i, j);
      for (int k = 0; k < g.dim(); ++k) {
        const cplx want = (k == r - 1 || k == r + 1) ? cplx(0.25) : cplx(0);
        CHECK(std::abs(c.matrix(r, k) - want) <= 1e-12);
      }
    }
}

TEST_CASE("trace of a commutator vanishes") {
  auto g = make_grid(3, 2, 17, 11);
  auto h = assemble_h(g, {1.0, 0.5}, make_potential(PotentialFamily::gaussian, 0.5, 2, 0.5, 1.0));
  auto dec = eigendecompose(h);
  CMatrix hf = h.matrix * apply_function(dec, make_bump(2.0, 0.8));
  DiscreteOperator op{hf, g, OperatorRole::generic};
  const cplx t = commutator_dx(op).matrix.trace();
  CHECK(std::abs(t) <= 1e-10 * g.dim() * dec.values.cwiseAbs().maxCoeff());
}

TEST_CASE("interior commutator rows converge at second order") {
  auto v = make_potential(PotentialFamily::gaussian, 0.8, 2, 0.5, 1.2);
  FieldParams f{1.0, 0.5};
  std::vector<double> dev;
  for (int nx : {17, 33, 65}) {
    auto g = make_grid(4, 2, nx, 9);
    auto c = commutator_dx(assemble_h(g, f, v));
    auto d = interior_deviation(c, f, eval_potential(v, g).dx);
    CHECK(d.max_row_imag <= 1e-10);
    dev.push_back(d.max_dev);
  }
  CHECK(std::log2(dev[0] / dev[1]) >= 1.8);
  CHECK(std::log2(dev[1] / dev[2]) >= 1.8);
}

TEST_CASE("multiplication commutator row sums are centered differences") {
  auto g = make_grid(3, 2, 13, 9);
  RVector w = position_values(g, Axis::x, 2);
  CMatrix c = multiplication_commutator(g, w);
  CHECK(max_abs(c - c.adjoint()) == 0.0);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 1; i < g.nx - 1; ++i) {
      const int r = g.index(i, j);
      CHECK(c.row(r).sum().real() == doctest::Approx(2 * g.x(i)).epsilon(1e-12));
    }
  RVector s = scalar_potential(g, {1.0, 0.5}, RVector::Ones(g.dim()));
  CHECK(s(0) == doctest::Approx(0.5 * -3 + 1));
}
