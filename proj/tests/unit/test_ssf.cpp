#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sslab/ssf.hpp"
#include "sslab/traces.hpp"

using namespace sslab;

namespace {

const PotentialSpec kZero = make_potential(PotentialFamily::zero, 0.0);
const PotentialSpec kGauss = make_potential(PotentialFamily::gaussian, 0.5, 2, 0.5, 2.0);

}  // namespace

TEST_CASE("trace formula with zero potential") {
  auto g = make_grid(6, 6, 21, 21);
  auto r = theorem1_check(g, {1.0, 0.5}, kZero, make_bump(2.0, 0.8));
  CHECK(std::abs(r.lhs) <= 1e-12 * g.dim());
  CHECK(r.rhs == 0.0);
  CHECK(std::abs(r.residual) <= 1e-12 * g.dim());
  CHECK(r.h == g.hx);
}

TEST_CASE("trace formula is linear in f") {
  auto g = make_grid(6, 6, 21, 21);
  auto f = make_bump(2.0, 0.8);
  auto f2 = make_bump(2.0, 0.8, 2.0);
  auto a = theorem1_check(g, {1.0, 0.5}, kGauss, f);
  auto b = theorem1_check(g, {1.0, 0.5}, kGauss, f2);
  CHECK(b.lhs == 2 * a.lhs);
  CHECK(b.rhs == 2 * a.rhs);
  CHECK(b.residual == 2 * a.residual);
}

TEST_CASE("window checks") {
  auto g = make_grid(6, 6, 21, 21);
  CHECK_THROWS_AS(theorem1_check(g, {1.0, 0.5}, kGauss, make_bump(40.0, 1.0)), WindowError);
  CHECK_THROWS_AS(theorem1_check(g, {1.0, 0.5}, kGauss, make_bump(-8.0, 1.0)), WindowError);
  Window w{0.0, 10.0};
  CHECK_NOTHROW(check_support(make_bump(5.0, 1.0), w, 0.1));
  try {
    check_support(make_bump(9.5, 1.0), w, 0.1);
    FAIL("expected WindowError");
  } catch (const WindowError& e) {
    CHECK(e.lo() == 0.0);
    CHECK(e.hi() == 10.0);
    CHECK(std::string(e.what()).find("9.9") != std::string::npos);
  }
  CHECK_THROWS_AS(theorem1_check(g, {1.0, 0.0}, kGauss, make_bump(2.0, 0.8)), ConfigError);
}

TEST_CASE("commutator trace vanishes") {
  auto g = make_grid(4, 4, 17, 17);
  auto f = make_bump(2.0, 0.8);
  for (const auto& v : {kZero, kGauss, make_potential(PotentialFamily::compact_bump, -1.0, 2, 0.5, 2.0)}) {
    auto c = commutator_trace_zero(g, {1.0, 0.5}, v, f);
    CHECK(std::abs(c.value) <= c.bound);
    CHECK(c.bound == doctest::Approx(1e-10 * g.dim() * c.h_norm));
  }

  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  auto gg = make_grid(2, 1, 12, 9);
  const int n = gg.dim();
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(nd(rng), nd(rng));
  m = (m + m.adjoint()).eval() / 2.0;
  RVector d(n);
  for (int i = 0; i < n; ++i) d(i) = nd(rng);
  CMatrix stencil = kron_x(gg, d1_op(gg.nx, gg.hx));
  CMatrix ds = d.cast<cplx>().asDiagonal() * stencil;
  const double norm = eigendecompose(m, false).values.cwiseAbs().maxCoeff();
  CHECK(std::abs((ds * m - m * ds).trace()) <= 1e-10 * n * norm);
}

TEST_CASE("radial cutoff") {
  CHECK(radial_cutoff(0.5, 1.0) == 1.0);
  CHECK(radial_cutoff(1.0, 1.0) == 1.0);
  CHECK(radial_cutoff(2.0, 1.0) == 0.0);
  CHECK(radial_cutoff(1.5, 1.0) > 0);
  CHECK(radial_cutoff(1.5, 1.0) < 1);
  CHECK(radial_cutoff_dr(0.5, 1.0) == 0.0);
  const double r = 1.37, h = 1e-6;
  CHECK(radial_cutoff_dr(r, 1.0) == doctest::Approx((radial_cutoff(r + h, 1.0) - radial_cutoff(r - h, 1.0)) / (2 * h)).epsilon(1e-6));
}

TEST_CASE("truncation convergence") {
  auto g = make_grid(4, 4, 25, 25);
  FieldParams fp{1.0, 0.5};
  auto f = make_bump(2.0, 0.8);
  auto bump = make_potential(PotentialFamily::compact_bump, 0.8, 2, 0.5, 0.9);
  for (const auto& r : truncation_convergence(g, fp, bump, f, {1.0, 1.5, 2.0})) {
    CHECK(r.trace_diff <= 1e-10);
    CHECK(r.comm_diff <= 1e-10);
  }
  for (const auto& r : truncation_convergence(g, fp, kZero, f, {1.0, 1.5, 2.0})) {
    CHECK(r.trace_diff == 0.0);
    CHECK(r.comm_diff == 0.0);
  }
  auto rows = truncation_convergence(g, fp, make_potential(PotentialFamily::gaussian, 0.5, 2, 0.5, 1.0), f,
                                     {1.0, 1.5, 2.0});
  for (size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].trace_diff < rows[k - 1].trace_diff);
    CHECK(rows[k].comm_diff < rows[k - 1].comm_diff);
  }
  CHECK_THROWS_AS(truncation_convergence(g, fp, kGauss, f, {1.0, 2.5}), GeometryError);
}

TEST_CASE("mollified xi prime") {
  auto g = make_grid(6, 6, 21, 21);
  FieldParams fp{1.0, 0.5};
  auto h0 = eigendecompose(assemble_h0(g, fp), false);
  auto h = eigendecompose(assemble_h(g, fp, kGauss), false);
  std::vector<double> lam;
  const double lo = h0.values.minCoeff() - 5, hi = h0.values.maxCoeff() + 5;
  const double dl = 0.01;
  for (double t = lo; t <= hi; t += dl) lam.push_back(t);

  auto zero = xi_prime_mollified(h0, h0, lam, 0.2);
  CHECK(zero.cwiseAbs().maxCoeff() <= 1e-12);

  auto curve = xi_prime_mollified(h, h0, lam, 0.2);
  CHECK(std::abs(curve.sum() * dl) <= 1e-8);

  // pairing with f recovers tr f(H) - tr f(H0) as eta shrinks
  auto f = make_bump(2.0, 0.8);
  auto rep = theorem1_check(g, fp, kGauss, f);
  double prev = 1e300;
  for (double eta : {0.1, 0.05, 0.02, 0.01}) {
    std::vector<double> fine;
    const double df = eta / 50;
    for (double t = 0.5; t <= 3.5; t += df) fine.push_back(t);
    auto c2 = xi_prime_mollified(h, h0, fine, eta);
    double pairing = 0;
    for (size_t k = 0; k < fine.size(); ++k) pairing += f(fine[k]) * c2(k) * df;
    const double err = std::abs(pairing - rep.lhs);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 0.05 * std::abs(rep.lhs));
}

TEST_CASE("log-log fit") {
  std::vector<ScalingSample> s;
  for (double e : {0.4, 0.283, 0.2, 0.141, 0.1}) s.push_back({e, 3.0 * std::pow(e, 1.7)});
  auto r = fit_loglog(s);
  CHECK(r.defined);
  CHECK(r.slope == doctest::Approx(1.7).epsilon(1e-12));
  CHECK(r.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(r.r2 == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<ScalingSample> scaled = s;
  for (auto& x : scaled) x.value *= 2;
  CHECK(fit_loglog(scaled).slope == doctest::Approx(r.slope).epsilon(1e-12));

  s[2].value = 1e-15;
  auto u = fit_loglog(s);
  CHECK(u.underflow);
  CHECK_FALSE(u.defined);
}

TEST_CASE("gap window") {
  auto g = make_grid(4, 4, 41, 41);
  auto dec = eigendecompose(assemble_q(g, {1.0, 0.0}, kZero));
  auto w = sigma_q_gap_window(dec, 0.4, 0.1, std::numeric_limits<double>::quiet_NaN(), 5e-2);
  CHECK(w.below < w.a);
  CHECK(w.b < w.above);
  CHECK(w.a - w.below == doctest::Approx(0.4));
  CHECK(w.above - w.b == doctest::Approx(0.4));
  CHECK(w.below == doctest::Approx(1.0).epsilon(0.1));
  CHECK(w.a < 1.6);
  CHECK(w.b > 2.4);
  CHECK_THROWS_AS(sigma_q_gap_window(dec, 5.0, 0.1, std::numeric_limits<double>::quiet_NaN(), 5e-2),
                  GapNotFoundError);

  auto dv = eigendecompose(assemble_q(g, {1.0, 0.0}, make_potential(PotentialFamily::gaussian, -0.6, 2, 0.5, 1.0)));
  auto wv = sigma_q_gap_window(dv, 0.4, 0.1, 2.0, 5e-2);
  CHECK(wv.b - wv.a < w.b - w.a);
}

TEST_CASE("epsilon scaling with zero potential underflows") {
  auto g = make_grid(4, 4, 41, 41);
  auto r = epsilon_scaling(g, 1.0, kZero, make_bump(2.0, 0.5), {0.4, 0.2, 0.1}, {0.3, 0.1, 5e-2});
  CHECK(r.samples.size() == 3);
  CHECK(r.underflow);
  CHECK_FALSE(r.defined);
  for (const auto& s : r.samples) CHECK(std::abs(s.value) <= kUnderflow);
}

TEST_CASE("resolvent expansion is exact") {
  auto g = make_grid(6, 6, 31, 31);
  auto q = assemble_q(g, {1.0, 0.0}, kGauss);
  const cplx z(2.0, 0.5);
  CHECK(resolvent_expansion_check(q, 0.0, z, 3) == 0.0);
  CHECK(resolvent_expansion_check(q, 0.3, z, 1) <= 1e-10);
  CHECK(resolvent_expansion_check(q, 0.3, z, 3) <= 1e-8);
}
