#include "sslab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "sslab/kernels.hpp"
#include "sslab/mourre.hpp"
#include "sslab/ssf.hpp"
#include "sslab/traces.hpp"

namespace sslab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double rel_change(double coarse, double fine) {
  const double d = std::max(std::abs(fine), 1e-300);
  return std::abs(coarse - fine) / d;
}

bool is_zero(const PotentialSpec& s) { return s.family == PotentialFamily::zero || s.amplitude == 0.0; }

nlohmann::json json_num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

std::vector<Level> levels_or_single(const Config& c) {
  auto lv = levels_from(c);
  if (lv.empty()) lv.push_back({c.integer("grid", "nx"), c.integer("grid", "ny")});
  return lv;
}

Envelope verify_theorem1(const Config& c) {
  Envelope e;
  const auto fields = fields_from(c);
  const auto spec = potential_from(c);
  const auto f = function_from(c);
  const double margin = c.num("experiment", "window_margin");
  const auto lv = levels_or_single(c);
  Table t{"theorem1", {"nx", "ny", "h", "lhs", "rhs", "residual", "rel_residual", "comm_trace", "comm_bound"}, {}};
  std::vector<double> hs, res;
  for (const auto& l : lv) {
    const auto g = grid_from(c, l.nx, l.ny);
    const auto r = theorem1_check(g, fields, spec, f, margin);
    const auto ct = commutator_trace_zero(g, fields, spec, f);
    const double rel = std::abs(r.residual) / std::max(std::abs(r.lhs), 1e-8);
    t.add({(long long)l.nx, (long long)l.ny, r.h, r.lhs, r.rhs, r.residual, rel, std::abs(ct.value), ct.bound});
    e.gates.push_back(gate_le("commutator trace nx=" + std::to_string(l.nx), std::abs(ct.value), ct.bound));
    if (is_zero(spec)) {
      e.gates.push_back(gate_le("zero-potential residual nx=" + std::to_string(l.nx), std::abs(r.residual),
                                1e-12 * g.dim()));
    }
    hs.push_back(r.h);
    res.push_back(r.residual);
  }
  if (!is_zero(spec)) {
    const double rel = std::abs(res.back()) / std::max(std::abs(std::get<double>(t.rows.back()[3])), 1e-8);
    e.gates.push_back(gate_le("finest relative residual", rel, c.num("experiment", "max_rel_residual")));
    if (lv.size() >= 3) {
      const auto ord = observed_orders(hs, res);
      e.results["orders"] = ord;
      e.gates.push_back(gate_ge("observed order", *std::min_element(ord.begin(), ord.end()),
                                c.num("experiment", "min_order")));
    }
  } else if (lv.size() >= 3) {
    e.results["orders"] = "exact";
  }
  e.tables.push_back(std::move(t));
  return e;
}

Envelope scaling(const Config& c) {
  Envelope e;
  const auto g = grid_from(c);
  const auto spec = potential_from(c);
  ScalingOptions opt;
  opt.gap_margin = c.num("experiment", "gap_margin");
  opt.loc_margin = c.num("experiment", "loc_margin");
  opt.degeneracy_tol = c.num("experiment", "degeneracy_tol");
  if (!c.has("fields", "eps_list")) throw ConfigError("fields.eps_list", "scaling needs an eps sweep");
  const auto rep = epsilon_scaling(g, fields_from(c).b, spec, function_from(c), c.list("fields", "eps_list"), opt);
  Table t{"scaling", {"eps", "value"}, {}};
  for (const auto& s : rep.samples) t.add({s.eps, s.value});
  const double target = spec.decay_n - 2.0;
  const double lo = c.has("experiment", "slope_lo") ? c.num("experiment", "slope_lo") : target - 0.5;
  const double hi = c.has("experiment", "slope_hi") ? c.num("experiment", "slope_hi") : target + 0.5;
  e.results["predicted_slope"] = target;
  e.results["underflow"] = rep.underflow;
  e.results["slope"] = rep.defined ? json_num(rep.slope) : nlohmann::json(nullptr);
  e.results["intercept"] = rep.defined ? json_num(rep.intercept) : nlohmann::json(nullptr);
  e.results["r2"] = rep.defined ? json_num(rep.r2) : nlohmann::json(nullptr);
  e.gates.push_back(gate_ge("slope defined", rep.defined ? 1.0 : 0.0, 1.0));
  e.gates.push_back(gate_in("slope", rep.defined ? rep.slope : kNaN, lo, hi));
  e.gates.push_back(gate_ge("r2", rep.defined ? rep.r2 : kNaN, c.num("experiment", "min_r2")));
  e.tables.push_back(std::move(t));
  return e;
}

Envelope mourre(const Config& c) {
  Envelope e;
  const auto g = grid_from(c);
  const auto fields = fields_from(c);
  const auto spec = potential_from(c);
  const auto pot = eval_potential(spec, g);
  const auto h = add_diagonal(assemble_h0(g, fields), pot.v, OperatorRole::H);
  const auto dec = eigendecompose(h, true);
  const double a = c.num("experiment", "a"), b = c.num("experiment", "b");
  const auto mb = mourre_gap_bound(dec, a, b, fields, pot.v);
  const auto full = mourre_gap_bound(dec, a, b, commutator_dx(h).matrix);
  const double tol = c.num("experiment", "mourre_tol");
  Table t{"mourre", {"a", "b", "eps", "rank", "bound", "full_commutator_bound"}, {}};
  t.add({a, b, fields.eps, (long long)mb.rank, mb.bound, full.bound});
  e.results["amplitude"] = spec.amplitude;
  e.results["sup_abs_dx"] = sup_abs_dx(spec);
  if (mb.empty) e.results["warning"] = mb.warning;
  e.gates.push_back(gate_ge("projector rank", mb.rank, 1));
  if (is_zero(spec))
    e.gates.push_back(gate_le("relative deviation from eps", std::abs(mb.bound - fields.eps) / fields.eps, tol));
  else
    e.gates.push_back(gate_ge("bound", mb.bound, 0.5 * fields.eps - tol * fields.eps));
  e.tables.push_back(std::move(t));
  return e;
}

Envelope lap(const Config& c) {
  Envelope e;
  const auto g = grid_from(c);
  const auto fields = fields_from(c);
  const auto spec = potential_from(c);
  const auto w = weight_from(c);
  const auto deltas = c.list("experiment", "deltas");
  const double loc_margin = c.num("experiment", "loc_margin"), tol = c.num("experiment", "degeneracy_tol");
  const auto dec = eigendecompose(assemble_h(g, fields, spec), true);
  Window win;
  if (c.has("experiment", "window_lo") && c.has("experiment", "window_hi")) {
    win = {c.num("experiment", "window_lo"), c.num("experiment", "window_hi")};
  } else {
    const auto dq = eigendecompose(assemble_q(g, fields, spec), true);
    const auto gw = sigma_q_gap_window(dq, c.num("experiment", "gap_margin"), loc_margin,
                                       std::numeric_limits<double>::quiet_NaN(), tol);
    win = {gw.a, gw.b};
  }
  const double lambda =
      c.has("experiment", "lambda") ? c.num("experiment", "lambda") : widest_gap_midpoint(dec.values, win.lo, win.hi);
  const auto probe = lap_probe(dec, lambda, w, deltas);
  Table t{"lap", {"kind", "lambda", "delta", "norm"}, {}};
  for (std::size_t k = 0; k < probe.norms.size(); ++k) t.add({std::string("gap"), lambda, probe.params[k], probe.norms[k]});
  e.results["window"] = {win.lo, win.hi};
  e.results["lambda"] = lambda;
  e.results["plateau_ratio"] = probe.plateau_ratio;
  e.gates.push_back(gate_le("plateau ratio", probe.plateau_ratio, c.num("experiment", "plateau_max")));
  // negative control at the localized H-eigenvalue nearest to lambda; without
  // any localized state the nearest eigenvalue of H is used
  const auto loc = localized_eigenvalues(dec, loc_margin, tol);
  double target = lambda;
  e.results["control_kind"] = loc.empty() ? "nearest eigenvalue" : "localized eigenvalue";
  if (!loc.empty()) {
    target = loc.front();
    for (double v : loc)
      if (std::abs(v - lambda) < std::abs(target - lambda)) target = v;
  }
  Eigen::Index k;
  (dec.values.array() - target).abs().minCoeff(&k);
  const double at = dec.values(k);
  const auto ctl = lap_probe(dec, at, w, deltas);
  for (std::size_t i = 0; i < ctl.norms.size(); ++i) t.add({std::string("control"), at, ctl.params[i], ctl.norms[i]});
  const double growth = ctl.plateau_ratio;
  e.results["control_eigenvalue"] = at;
  e.results["control_growth"] = json_num(growth);
  e.gates.push_back(gate_ge("control growth per halving", growth, c.num("experiment", "control_growth")));
  e.tables.push_back(std::move(t));
  return e;
}

Envelope lemma7(const Config& c) {
  Envelope e;
  const auto g = grid_from(c);
  const auto spec = potential_from(c);
  Lemma7Options opt;
  opt.loc_margin = c.num("experiment", "loc_margin");
  opt.degeneracy_tol = c.num("experiment", "degeneracy_tol");
  opt.support_margin = c.num("experiment", "support_margin");
  if (!c.has("fields", "eps_list")) throw ConfigError("fields.eps_list", "lemma7 needs an eps sweep");
  const auto rep = lemma7_sweep(g, fields_from(c).b, spec, function_from(c), c.list("fields", "eps_list"), opt);
  Table t{"lemma7", {"eps", "norm"}, {}};
  for (const auto& s : rep.samples) t.add({s.eps, s.value});
  const double lo = c.has("experiment", "slope_lo") ? c.num("experiment", "slope_lo") : 1.6;
  const double hi = c.has("experiment", "slope_hi") ? c.num("experiment", "slope_hi") : 2.4;
  e.results["slope"] = rep.defined ? json_num(rep.slope) : nlohmann::json(nullptr);
  e.results["r2"] = rep.defined ? json_num(rep.r2) : nlohmann::json(nullptr);
  e.gates.push_back(gate_in("slope", rep.defined ? rep.slope : kNaN, lo, hi));
  e.tables.push_back(std::move(t));
  return e;
}

ProbeSpec probe_from(const Config& c) {
  ProbeSpec p;
  p.z = {c.num("experiment", "z_re"), c.num("experiment", "z_im")};
  p.zp = {c.num("experiment", "zp_re"), c.num("experiment", "zp_im")};
  p.deltas = c.list("experiment", "deltas");
  return p;
}

Envelope prop2(const Config& c) {
  Envelope e;
  const auto g = grid_from(c);
  const auto spec = potential_from(c);
  const auto pot = eval_potential(spec, g);
  const auto dec = eigendecompose(add_diagonal(assemble_h0(g, fields_from(c)), pot.v, OperatorRole::H), true);
  const auto rep = prop2_tracebound(dec, pot.v, probe_from(c));
  Table t{"prop2", {"delta", "z_re", "z_im", "zp_re", "zp_im", "nuclear", "product"}, {}};
  for (const auto& r : rep.rows) t.add({r.delta, r.z.real(), r.z.imag(), r.zp.real(), r.zp.imag(), r.nuclear, r.product});
  e.results["max_min_ratio"] = rep.max_min_ratio;
  e.gates.push_back(gate_le("max/min product ratio", rep.max_min_ratio, c.num("experiment", "max_ratio")));
  e.tables.push_back(std::move(t));
  return e;
}

Envelope prop4(const Config& c) {
  Envelope e;
  const auto fields = fields_from(c);
  const auto spec = potential_from(c);
  const auto w = weight_from(c);
  const int n = c.integer("experiment", "order");
  const cplx z(c.num("experiment", "z_re"), c.num("experiment", "z_im"));
  const auto lv = levels_or_single(c);
  Table t{"prop4", {"nx", "ny", "z_re", "z_im", "norm"}, {}};
  std::vector<double> norms;
  double shifted = kNaN;
  for (std::size_t k = 0; k < lv.size(); ++k) {
    const auto g = grid_from(c, lv[k].nx, lv[k].ny);
    const auto pot = eval_potential(spec, g);
    const auto dq = eigendecompose(assemble_q(g, fields, spec), true);
    GapCheck gap{localized_eigenvalues(dq, c.num("experiment", "loc_margin"), c.num("experiment", "degeneracy_tol")),
                 c.num("experiment", "gap_margin")};
    const double v = prop4_norm(dq, pot.dx, n, w, z, gap);
    norms.push_back(v);
    t.add({(long long)lv[k].nx, (long long)lv[k].ny, z.real(), z.imag(), v});
    if (k + 1 == lv.size()) shifted = prop4_norm(dq, pot.dx, n, w, z + cplx(0.0, 0.01), gap);
  }
  e.results["norm_shifted"] = shifted;
  e.gates.push_back(gate_le("continuity z -> z + 0.01i", rel_change(shifted, norms.back()),
                            c.num("experiment", "continuity_max")));
  if (norms.size() >= 2)
    e.gates.push_back(gate_le("relative change between finest grids", rel_change(norms[norms.size() - 2], norms.back()),
                              c.num("experiment", "max_rel_change")));
  e.tables.push_back(std::move(t));
  return e;
}

Envelope appendix(const Config& c) {
  Envelope e;
  const auto fields = fields_from(c);
  const auto w = weight_from(c);
  const auto lv = levels_or_single(c);
  Table t{"appendix", {"nx", "ny", "hs1", "tr2"}, {}};
  std::vector<AppendixNorms> out;
  for (const auto& l : lv) {
    const auto g = grid_from(c, l.nx, l.ny);
    out.push_back(appendix_norms(assemble_h0(g, fields), w));
    t.add({(long long)l.nx, (long long)l.ny, out.back().hs1, out.back().tr2});
  }
  const double tol = c.num("experiment", "max_rel_change");
  if (out.size() >= 2) {
    const auto& p = out[out.size() - 2];
    const auto& q = out.back();
    e.gates.push_back(gate_le("hs1 relative change", rel_change(p.hs1, q.hs1), tol));
    e.gates.push_back(gate_le("tr2 relative change", rel_change(p.tr2, q.tr2), tol));
  }
  for (const auto& a : out) {
    e.gates.push_back(gate_le("hs1 finite", std::isfinite(a.hs1) ? 0.0 : 1.0, 0.0));
    e.gates.push_back(gate_le("tr2 finite", std::isfinite(a.tr2) ? 0.0 : 1.0, 0.0));
  }
  e.tables.push_back(std::move(t));
  return e;
}

Envelope spectrum(const Config& c) {
  Envelope e;
  const auto g = grid_from(c);
  const auto fields = fields_from(c);
  const auto dq = eigendecompose(assemble_q(g, fields, potential_from(c)), true);
  const auto ls = localized_spectrum(dq, c.num("experiment", "loc_margin"), c.num("experiment", "degeneracy_tol"));
  Table t{"spectrum", {"index", "eigenvalue", "score", "localized"}, {}};
  std::vector<double> loc;
  for (const auto& s : ls) {
    t.add({(long long)s.index, s.eigenvalue, s.score, (long long)s.localized});
    if (s.localized) loc.push_back(s.eigenvalue);
  }
  std::sort(loc.begin(), loc.end());
  const auto cl = cluster_levels(loc, fields.b);
  auto jc = nlohmann::json::array();
  for (const auto& k : cl) jc.push_back({{"lo", k.lo}, {"hi", k.hi}, {"mean", k.mean}, {"count", k.count}});
  e.results["clusters"] = jc;
  const double b = fields.b;
  auto dev = [&](std::size_t i, double target) {
    if (i >= cl.size()) return std::numeric_limits<double>::infinity();
    return std::max(std::abs(cl[i].lo - target), std::abs(cl[i].hi - target));
  };
  e.gates.push_back(gate_le("lowest cluster deviation from B", dev(0, b), c.num("experiment", "level1_tol")));
  e.gates.push_back(gate_le("second cluster deviation from 3B", dev(1, 3 * b), c.num("experiment", "level2_tol")));
  e.tables.push_back(std::move(t));
  return e;
}

Envelope truncation(const Config& c) {
  Envelope e;
  const auto rows = truncation_convergence(grid_from(c), fields_from(c), potential_from(c), function_from(c),
                                           c.list("experiment", "radii"));
  Table t{"truncation", {"radius", "trace_diff", "comm_diff"}, {}};
  int up_t = 0, up_c = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    t.add({rows[k].radius, rows[k].trace_diff, rows[k].comm_diff});
    if (k) {
      // values at round-off level count as flat
      if (rows[k].trace_diff > rows[k - 1].trace_diff && rows[k].trace_diff > 1e-10) ++up_t;
      if (rows[k].comm_diff > rows[k - 1].comm_diff && rows[k].comm_diff > 1e-10) ++up_c;
    }
  }
  e.gates.push_back(gate_le("trace column increases", up_t, 0));
  e.gates.push_back(gate_le("commutator column increases", up_c, 0));
  e.tables.push_back(std::move(t));
  return e;
}

Envelope expansion(const Config& c) {
  Envelope e;
  const auto fields = fields_from(c);
  const auto spec = potential_from(c);
  const cplx z(c.num("experiment", "z_re"), c.num("experiment", "z_im"));
  const auto orders = c.int_list("experiment", "orders");
  const double tol = c.num("experiment", "max_residual");
  const auto lv = levels_or_single(c);
  Table t{"expansion", {"nx", "ny", "n", "residual"}, {}};
  for (const auto& l : lv) {
    const auto q = assemble_q(grid_from(c, l.nx, l.ny), fields, spec);
    for (int n : orders) {
      const double r = resolvent_expansion_check(q, fields.eps, z, n);
      t.add({(long long)l.nx, (long long)l.ny, (long long)n, r});
      e.gates.push_back(gate_le("residual nx=" + std::to_string(l.nx) + " n=" + std::to_string(n), r, tol));
    }
  }
  if (lv.size() >= 3) e.results["orders"] = "exact";
  e.tables.push_back(std::move(t));
  return e;
}

using Handler = std::function<Envelope(const Config&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"verify-theorem1", verify_theorem1}, {"scaling", scaling},   {"mourre", mourre},
      {"lap-probe", lap},                   {"lemma7", lemma7},     {"prop2", prop2},
      {"prop4", prop4},                     {"appendix-norms", appendix}, {"spectrum", spectrum},
      {"truncation", truncation},           {"expansion-check", expansion},
  };
  return h;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"verify-theorem1", "scaling", "mourre", "lap-probe",
                                                 "lemma7", "prop2", "prop4", "appendix-norms",
                                                 "spectrum", "truncation", "expansion-check"};
  return names;
}

GridSpec grid_from(const Config& c, int nx, int ny) {
  return make_grid(c.num("grid", "lx"), c.num("grid", "ly"), nx, ny);
}

GridSpec grid_from(const Config& c) { return grid_from(c, c.integer("grid", "nx"), c.integer("grid", "ny")); }

FieldParams fields_from(const Config& c) {
  FieldParams f{c.num("fields", "b"), c.num("fields", "eps")};
  try {
    validate(f);
  } catch (const ConfigError& e) {
    throw ConfigError("fields." + e.field(), e.what());
  }
  return f;
}

PotentialSpec potential_from(const Config& c) {
  auto s = make_potential(parse_family(c.raw("potential", "family")), c.num("potential", "amplitude"),
                          c.integer("potential", "n"), c.num("potential", "delta"), c.num("potential", "width"));
  if (c.flag("potential", "clamp")) s = clamp_for_commutator(s, c.num("fields", "eps"));
  return s;
}

BumpFunction function_from(const Config& c) {
  const double core = c.num("function", "core");
  if (core > 0) {
    auto f = make_plateau(c.num("function", "center"), c.num("function", "halfwidth"), core);
    f.scale = c.num("function", "scale");
    return f;
  }
  return make_bump(c.num("function", "center"), c.num("function", "halfwidth"), c.num("function", "scale"));
}

WeightSpec weight_from(const Config& c) {
  WeightSpec w;
  w.s = c.num("experiment", "s");
  w.delta = c.num("experiment", "weight_delta");
  return w;
}

std::vector<Level> levels_from(const Config& c) {
  const auto nx = c.int_list("experiment", "levels");
  if (nx.empty()) return {};
  if (nx.size() < 3) throw ConfigError("experiment.levels", "convergence needs at least 3 refinement levels");
  auto ny = c.int_list("experiment", "levels_ny");
  if (ny.empty()) ny = nx;
  if (ny.size() != nx.size()) throw ConfigError("experiment.levels_ny", "must match the length of levels");
  std::vector<Level> out;
  for (std::size_t k = 0; k < nx.size(); ++k) {
    if (k && !(nx[k] > nx[k - 1])) throw ConfigError("experiment.levels", "must be increasing");
    if (static_cast<long long>(nx[k]) * ny[k] > dense_limit())
      throw CapacityError("refinement level " + std::to_string(nx[k]) + "x" + std::to_string(ny[k]) +
                          " exceeds the dense limit " + std::to_string(dense_limit()));
    out.push_back({nx[k], ny[k]});
  }
  return out;
}

std::vector<double> observed_orders(const std::vector<double>& h, const std::vector<double>& r) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < h.size(); ++k)
    out.push_back(std::log(std::abs(r[k]) / std::abs(r[k + 1])) / std::log(h[k] / h[k + 1]));
  return out;
}

Envelope run_experiment(const std::string& name, const Config& c) {
  const auto& h = handlers();
  const auto it = h.find(name);
  if (it == h.end()) throw ConfigError("experiment", "unknown experiment '" + name + "'");
  set_thread_count(c.integer("experiment", "threads"));
  set_dense_limit(c.integer("experiment", "dense_limit"));
  const auto t0 = std::chrono::steady_clock::now();
  Envelope e = it->second(c);
  e.experiment = name;
  e.config_echo = c.echo();
  e.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return e;
}

}  // namespace sslab
