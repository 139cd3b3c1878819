// Serial vs OpenMP timings for the hot kernels.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#include <omp.h>

#include "sslab/hamiltonian.hpp"
#include "sslab/kernels.hpp"

using namespace sslab;

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 41;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  const auto g = make_grid(6, 6, n, n);
  const CMatrix m = assemble_h0(g, {1.0, 0.5}).matrix;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  CMatrix u(g.dim(), g.dim());
  for (Eigen::Index k = 0; k < u.size(); ++k) u.data()[k] = cplx(nd(rng), nd(rng));
  RVector w(g.dim());
  for (Eigen::Index k = 0; k < w.size(); ++k) w(k) = nd(rng);
  std::vector<double> lambdas(2000);
  for (std::size_t k = 0; k < lambdas.size(); ++k) lambdas[k] = -5.0 + 0.01 * k;
  const RVector e1 = w.array() + 1.0, e0 = w;

  std::printf("N = %d, threads = %d\n", g.dim(), omp_get_max_threads());
  std::printf("%-24s %12s %12s %8s %s\n", "kernel", "serial [s]", "omp [s]", "speedup", "identical");
  auto row = [&](const char* name, auto run, auto same) {
    decltype(run(Exec::serial)) a, b;
    const double ts = best_of(reps, [&] { a = run(Exec::serial); });
    const double tp = best_of(reps, [&] { b = run(Exec::parallel); });
    std::printf("%-24s %12.4f %12.4f %8.2f %s\n", name, ts, tp, ts / tp, same(a, b) ? "yes" : "NO");
  };
  auto eq = [](const auto& a, const auto& b) { return a == b; };
  row("apply_dx_left", [&](Exec e) { return apply_dx_left(g, m, e); }, eq);
  row("apply_dx_right", [&](Exec e) { return apply_dx_right(g, m, e); }, eq);
  row("trace_product", [&](Exec e) { return trace_product(u, m, e); }, eq);
  row("column_weighted_mass", [&](Exec e) { return column_weighted_mass(u, w, e); }, eq);
  row("scale_columns", [&](Exec e) { return scale_columns(u, w.cast<cplx>(), e); }, eq);
  row("mollified_difference", [&](Exec e) { return mollified_difference(e1, e0, lambdas, 0.05, e); }, eq);
  return 0;
}
