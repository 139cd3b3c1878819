#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sslab/potentials.hpp"

using namespace sslab;

namespace {

std::vector<PotentialSpec> families() {
  return {make_potential(PotentialFamily::separable_power, 1.0, 3, 0.5),
          make_potential(PotentialFamily::gaussian, 0.5, 2, 0.5, 2.0),
          make_potential(PotentialFamily::compact_bump, -0.7, 2, 0.5, 2.5)};
}

}  // namespace

TEST_CASE("zero family") {
  auto g = make_grid(4, 4, 17, 17);
  auto f = eval_potential(make_potential(PotentialFamily::zero, 3.0), g);
  CHECK(f.v.cwiseAbs().maxCoeff() == 0.0);
  CHECK(f.dx.cwiseAbs().maxCoeff() == 0.0);
  CHECK(f.dxx.cwiseAbs().maxCoeff() == 0.0);
  auto c = certify_decay(make_potential(PotentialFamily::zero, 0.0), g);
  CHECK(c.pass);
  CHECK(c.max_ratio() == 0.0);
}

TEST_CASE("closed forms at known points") {
  auto s = make_potential(PotentialFamily::separable_power, 1.0, 3, 0.5);
  CHECK(s.value(0, 0) == 1.0);
  CHECK(s.value(1, 0) == doctest::Approx(std::pow(2.0, -1.75)));
  auto gs = make_potential(PotentialFamily::gaussian, 0.5, 2, 0.5, 2.0);
  CHECK(gs.dx(2, 0) == doctest::Approx(-0.5 * std::exp(-1.0)).epsilon(1e-14));
  CHECK(gs.dx(2, 0) == doctest::Approx(-0.1839).epsilon(1e-3));
  auto b = make_potential(PotentialFamily::compact_bump, 2.0, 2, 0.5, 1.0);
  CHECK(b.value(0, 0) == 2.0);
  CHECK(b.value(0.6, 0.8) == 0.0);
  CHECK(b.dx(1.5, 0) == 0.0);
}

TEST_CASE("derivatives match finite differences") {
  std::mt19937_64 rng(7);
  auto g = make_grid(6, 6, 61, 61);
  std::uniform_int_distribution<int> pick(0, 60);
  const double step = 1e-4;
  for (const auto& s : families()) {
    for (int k = 0; k < 100; ++k) {
      const double x = g.x(pick(rng)), y = g.y(pick(rng));
      const double fd1 = (s.value(x + step, y) - s.value(x - step, y)) / (2 * step);
      const double fd2 = (s.dx(x + step, y) - s.dx(x - step, y)) / (2 * step);
      CHECK(std::abs(fd1 - s.dx(x, y)) <= 1e-6);
      CHECK(std::abs(fd2 - s.dxx(x, y)) <= 1e-6);
    }
  }
}

TEST_CASE("amplitude scaling and symmetry") {
  auto g = make_grid(5, 4, 21, 17);
  for (const auto& s : families()) {
    auto t = s;
    t.amplitude *= 4.0;
    auto a = eval_potential(s, g), b = eval_potential(t, g);
    CHECK((b.v - 4.0 * a.v).cwiseAbs().maxCoeff() == 0.0);
    CHECK((b.dx - 4.0 * a.dx).cwiseAbs().maxCoeff() == 0.0);
    CHECK((b.dxx - 4.0 * a.dxx).cwiseAbs().maxCoeff() == 0.0);
  }
  for (const auto& s : families()) {
    if (s.family == PotentialFamily::compact_bump) continue;
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const double x = g.x(i), y = g.y(j);
        CHECK(s.value(x, y) == s.value(-x, y));
        CHECK(s.value(x, y) == s.value(x, -y));
      }
  }
}

TEST_CASE("decay certificates") {
  auto g = make_grid(30, 10, 121, 41);
  for (int n = 2; n <= 6; ++n) {
    auto s = make_potential(PotentialFamily::gaussian, 1.0, n, 0.5, 1.5);
    CHECK(certify_decay(s, g).pass);
    CHECK(certify_decay(s, g, EnvelopeKind::admission).pass);
  }
  auto sep = make_potential(PotentialFamily::separable_power, 1.0, 3, 0.5);
  CHECK(certify_decay(sep, g).pass);
  CHECK(certify_decay(sep, g, EnvelopeKind::admission).pass);
  auto c5 = certify_decay(sep, g, EnvelopeKind::decay_n, 5);
  CHECK_FALSE(c5.pass);
  CHECK(std::abs(c5.entries[0].worst_x) > 5.0);
  auto bump = make_potential(PotentialFamily::compact_bump, 1.0, 4, 0.5, 2.0);
  CHECK(certify_decay(bump, g).pass);
}

TEST_CASE("certificate violation is an error") {
  auto g = make_grid(10, 10, 41, 41);
  auto s = make_potential(PotentialFamily::separable_power, 1.0, 2, 0.5);
  s.decay_n = 1;  // decays too slowly for the admission envelope
  CHECK_THROWS_AS(eval_potential(s, g), DecayCertificateError);
}

TEST_CASE("make_potential preconditions") {
  CHECK_THROWS_AS(make_potential(PotentialFamily::gaussian, 1.0, 1), ConfigError);
  CHECK_THROWS_AS(make_potential(PotentialFamily::gaussian, 1.0, 2, 0.0), ConfigError);
  CHECK_THROWS_AS(make_potential(PotentialFamily::gaussian, 1.0, 2, 0.5, -1), ConfigError);
  CHECK_THROWS_AS(parse_family("lorentzian"), ConfigError);
  CHECK(parse_family("compact_bump") == PotentialFamily::compact_bump);
}

TEST_CASE("sup |dx V| and clamping") {
  for (const auto& s : families()) {
    double sampled = 0;
    for (int i = -4000; i <= 4000; ++i)
      for (int j = -40; j <= 40; ++j) sampled = std::max(sampled, std::abs(s.dx(i * 1e-3, j * 0.05)));
    const double bound = sup_abs_dx(s);
    CHECK(sampled <= bound * (1 + 1e-12));
    if (s.family != PotentialFamily::compact_bump) CHECK(sampled >= 0.999 * bound);
    auto c = clamp_for_commutator(s, 0.3);
    CHECK(sup_abs_dx(c) <= 0.15 * (1 + 1e-12));
    auto loose = clamp_for_commutator(s, 100.0);
    CHECK(loose.amplitude == s.amplitude);
  }
}
