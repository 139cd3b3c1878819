#include "sslab/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sslab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sup_{t >= 0} (1+t)^m exp(-t^2/w^2), attained where m/(1+t) = 2t/w^2.
double gaussian_weight_sup(double m, double w) {
  if (m <= 0) return 1.0;
  const double t = 0.5 * (-1.0 + std::sqrt(1.0 + 2.0 * m * w * w));
  return std::pow(1.0 + t, m) * std::exp(-t * t / (w * w));
}

// sup_{q >= 1} q^k exp(1 - q) = k^k exp(1 - k) for k >= 1.
double bump_power_sup(int k) { return std::pow(k, k) * std::exp(1.0 - k); }

struct Exponents {
  double mx, ky;
};

Exponents envelope_exponents(const PotentialSpec& spec, EnvelopeKind kind, int n, int alpha) {
  const double d = spec.decay_delta;
  if (kind == EnvelopeKind::admission) return {2.0 + d, 1.0 + d};
  return {n + d + alpha, 2.0 + d};
}

double envelope(double x, double y, Exponents e) {
  return std::pow(1.0 + std::abs(x), -e.mx) * std::pow(1.0 + std::abs(y), -e.ky);
}

double derivative(const PotentialSpec& s, int alpha, double x, double y) {
  switch (alpha) {
    case 0: return s.value(x, y);
    case 1: return s.dx(x, y);
    default: return s.dxx(x, y);
  }
}

}  // namespace

PotentialFamily parse_family(const std::string& name) {
  if (name == "zero") return PotentialFamily::zero;
  if (name == "separable_power") return PotentialFamily::separable_power;
  if (name == "gaussian") return PotentialFamily::gaussian;
  if (name == "compact_bump") return PotentialFamily::compact_bump;
  throw ConfigError("potential.family", "unknown family '" + name + "'");
}

const char* family_name(PotentialFamily f) noexcept {
  switch (f) {
    case PotentialFamily::zero: return "zero";
    case PotentialFamily::separable_power: return "separable_power";
    case PotentialFamily::gaussian: return "gaussian";
    case PotentialFamily::compact_bump: return "compact_bump";
  }
  return "zero";
}

double PotentialSpec::value(double x, double y) const {
  switch (family) {
    case PotentialFamily::zero: return 0.0;
    case PotentialFamily::separable_power: {
      const double p = 0.5 * (decay_n + decay_delta);
      const double r = 0.5 * (2.0 + decay_delta);
      return amplitude * std::pow(1.0 + x * x, -p) * std::pow(1.0 + y * y, -r);
    }
    case PotentialFamily::gaussian:
      return amplitude * std::exp(-(x * x + y * y) / (width * width));
    case PotentialFamily::compact_bump: {
      const double u = (x * x + y * y) / (width * width);
      if (u >= 1.0) return 0.0;
      return amplitude * std::exp(1.0 - 1.0 / (1.0 - u));
    }
  }
  return 0.0;
}

double PotentialSpec::dx(double x, double y) const {
  switch (family) {
    case PotentialFamily::zero: return 0.0;
    case PotentialFamily::separable_power: {
      const double p = 0.5 * (decay_n + decay_delta);
      const double r = 0.5 * (2.0 + decay_delta);
      return amplitude * (-2.0 * p * x) * std::pow(1.0 + x * x, -p - 1.0) *
             std::pow(1.0 + y * y, -r);
    }
    case PotentialFamily::gaussian:
      return -(2.0 * x / (width * width)) * value(x, y);
    case PotentialFamily::compact_bump: {
      const double w2 = width * width;
      const double u = (x * x + y * y) / w2;
      if (u >= 1.0) return 0.0;
      const double q = 1.0 / (1.0 - u);
      return -value(x, y) * q * q * (2.0 * x / w2);
    }
  }
  return 0.0;
}

double PotentialSpec::dxx(double x, double y) const {
  switch (family) {
    case PotentialFamily::zero: return 0.0;
    case PotentialFamily::separable_power: {
      const double p = 0.5 * (decay_n + decay_delta);
      const double r = 0.5 * (2.0 + decay_delta);
      const double s = 1.0 + x * x;
      const double g2 = -2.0 * p * std::pow(s, -p - 1.0) + 4.0 * p * (p + 1.0) * x * x * std::pow(s, -p - 2.0);
      return amplitude * g2 * std::pow(1.0 + y * y, -r);
    }
    case PotentialFamily::gaussian: {
      const double w2 = width * width;
      return (-2.0 / w2 + 4.0 * x * x / (w2 * w2)) * value(x, y);
    }
    case PotentialFamily::compact_bump: {
      const double w2 = width * width;
      const double u = (x * x + y * y) / w2;
      if (u >= 1.0) return 0.0;
      const double q = 1.0 / (1.0 - u);
      const double v = value(x, y);
      return -(2.0 / w2) * (x * q * q * dx(x, y) + 4.0 * x * x * q * q * q * v / w2 + v * q * q);
    }
  }
  return 0.0;
}

double PotentialSpec::envelope_constant(int alpha, double mx, double ky) const {
  const double a = std::abs(amplitude);
  switch (family) {
    case PotentialFamily::zero: return 0.0;
    case PotentialFamily::separable_power: {
      // (1+|x|)^m <= 2^(m/2) (1+x^2)^(m/2), same in y.
      const double p = 0.5 * (decay_n + decay_delta);
      if (mx > 2.0 * p + alpha + 1e-12 || ky > 2.0 + decay_delta + 1e-12) return kInf;
      double g = 1.0;
      if (alpha == 1) g = 2.0 * p;
      if (alpha == 2) g = 2.0 * p + 4.0 * p * (p + 1.0);
      return a * g * std::pow(2.0, 0.5 * mx) * std::pow(2.0, 0.5 * ky);
    }
    case PotentialFamily::gaussian: {
      const double w = width, w2 = w * w;
      const double sy = gaussian_weight_sup(ky, w);
      if (alpha == 0) return a * gaussian_weight_sup(mx, w) * sy;
      if (alpha == 1) return a * (2.0 / w2) * gaussian_weight_sup(mx + 1.0, w) * sy;
      return a * ((2.0 / w2) * gaussian_weight_sup(mx, w) + (4.0 / (w2 * w2)) * gaussian_weight_sup(mx + 2.0, w)) * sy;
    }
    case PotentialFamily::compact_bump: {
      const double w = width;
      const double support = std::pow(1.0 + w, mx) * std::pow(1.0 + w, ky);
      if (alpha == 0) return a * support;
      if (alpha == 1) return a * (2.0 / w) * bump_power_sup(2) * support;
      const double s = 2.0 * bump_power_sup(4) + 4.0 * bump_power_sup(3) + bump_power_sup(2);
      return a * (2.0 / (w * w)) * s * support;
    }
  }
  return 0.0;
}

PotentialSpec make_potential(PotentialFamily family, double amplitude, int decay_n, double decay_delta,
                             double width) {
  if (decay_n < 2) throw ConfigError("potential.n", "decay exponent n must be >= 2");
  if (!(decay_delta > 0)) throw ConfigError("potential.delta", "delta must be > 0");
  if (!(width > 0)) throw ConfigError("potential.width", "width must be > 0");
  if (!std::isfinite(amplitude)) throw ConfigError("potential.amplitude", "must be finite");
  PotentialSpec s;
  s.family = family;
  s.amplitude = family == PotentialFamily::zero ? 0.0 : amplitude;
  s.decay_n = decay_n;
  s.decay_delta = decay_delta;
  s.width = width;
  return s;
}

double sup_abs_dx(const PotentialSpec& spec) {
  const double a = std::abs(spec.amplitude);
  switch (spec.family) {
    case PotentialFamily::zero: return 0.0;
    case PotentialFamily::separable_power: {
      // max of t (1+t^2)^(-p-1) at t^2 = 1/(2p+1); the y factor is <= 1.
      const double p = 0.5 * (spec.decay_n + spec.decay_delta);
      const double t = std::sqrt(1.0 / (2.0 * p + 1.0));
      return a * 2.0 * p * t * std::pow(1.0 + t * t, -p - 1.0);
    }
    case PotentialFamily::gaussian:
      return a * std::sqrt(2.0) * std::exp(-0.5) / spec.width;
    case PotentialFamily::compact_bump:
      return a * (2.0 / spec.width) * bump_power_sup(2);
  }
  return 0.0;
}

PotentialSpec clamp_for_commutator(const PotentialSpec& spec, double eps) {
  PotentialSpec out = spec;
  const double sup = sup_abs_dx(spec);
  if (sup > 0.5 * eps) out.amplitude *= 0.5 * eps / sup;
  return out;
}

double DecayCertificate::max_ratio() const {
  double m = 0;
  for (int k = 0; k < checked; ++k) m = std::max(m, entries[k].max_ratio);
  return m;
}

DecayCertificate certify_decay(const PotentialSpec& spec, const GridSpec& grid, EnvelopeKind kind,
                               int tested_n) {
  DecayCertificate cert;
  cert.kind = kind;
  cert.tested_n = tested_n < 0 ? spec.decay_n : tested_n;
  cert.checked = kind == EnvelopeKind::admission ? 2 : 3;
  for (int alpha = 0; alpha < cert.checked; ++alpha) {
    const auto declared = envelope_exponents(spec, kind, spec.decay_n, alpha);
    const auto tested = envelope_exponents(spec, kind, cert.tested_n, alpha);
    const double c = spec.envelope_constant(alpha, declared.mx, declared.ky);
    CertificateEntry& e = cert.entries[alpha];
    e.alpha = alpha;
    if (!std::isfinite(c)) {
      // the family cannot meet this envelope with any finite constant
      e.max_ratio = kInf;
      cert.pass = false;
      continue;
    }
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.x(i), y = grid.y(j);
        const double v = std::abs(derivative(spec, alpha, x, y));
        if (v == 0.0) continue;
        const double ratio = v / (c * envelope(x, y, tested));
        if (ratio > e.max_ratio) {
          e.max_ratio = ratio;
          e.worst_x = x;
          e.worst_y = y;
        }
      }
    }
    if (e.max_ratio > 1.0) cert.pass = false;
  }
  return cert;
}

PotentialFields eval_potential(const PotentialSpec& spec, const GridSpec& grid) {
  PotentialFields out;
  out.v.resize(grid.dim());
  out.dx.resize(grid.dim());
  out.dxx.resize(grid.dim());
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.x(i), y = grid.y(j);
      const int k = grid.index(i, j);
      out.v(k) = spec.value(x, y);
      out.dx(k) = spec.dx(x, y);
      out.dxx(k) = spec.dxx(x, y);
    }
  }
  out.certificate = certify_decay(spec, grid, EnvelopeKind::admission);
  for (int alpha = 0; alpha < out.certificate.checked; ++alpha) {
    const auto& e = out.certificate.entries[alpha];
    if (e.max_ratio > 1.01) {
      std::ostringstream msg;
      msg << "decay certificate violated for d_x^" << alpha << " V: ratio " << e.max_ratio
          << " at (" << e.worst_x << ", " << e.worst_y << ")";
      throw DecayCertificateError(msg.str());
    }
  }
  return out;
}

}  // namespace sslab
