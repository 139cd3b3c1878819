#pragma once

#include <array>
#include <string>

#include "sslab/grid.hpp"

namespace sslab {

enum class PotentialFamily { zero, separable_power, gaussian, compact_bump };

PotentialFamily parse_family(const std::string& name);
const char* family_name(PotentialFamily f) noexcept;

/// Analytic potential with closed-form x-derivatives.
///
/// Families (a = amplitude, n = decay_n, d = decay_delta, w = width):
///   separable_power  a (1+x^2)^(-(n+d)/2) (1+y^2)^(-(2+d)/2)
///   gaussian         a exp(-(x^2+y^2)/w^2)
///   compact_bump     a exp(1 - 1/(1 - r^2/w^2)) for r < w, 0 outside
struct PotentialSpec {
  PotentialFamily family = PotentialFamily::zero;
  double amplitude = 0.0;
  int decay_n = 2;
  double decay_delta = 0.5;
  double width = 1.0;

  double value(double x, double y) const;
  double dx(double x, double y) const;
  double dxx(double x, double y) const;

  // Declared envelope constants C_alpha, alpha = 0, 1, 2, for the envelope
  // (1+|x|)^(-m-alpha) (1+|y|)^(-k). These are proven closed-form bounds,
  // never fitted to samples.
  double envelope_constant(int alpha, double mx, double ky) const;
};

PotentialSpec make_potential(PotentialFamily family, double amplitude, int decay_n = 2,
                             double decay_delta = 0.5, double width = 1.0);

// Returns a copy whose amplitude is scaled down, if needed, so that
// sup |d_x V| <= eps / 2 (closed-form sup bound).
PotentialSpec clamp_for_commutator(const PotentialSpec& spec, double eps);

// Closed-form bound on sup |d_x V| over the plane.
double sup_abs_dx(const PotentialSpec& spec);

enum class EnvelopeKind {
  admission,  // |V|, |d_x V| <= C (1+|x|)^(-2-d) (1+|y|)^(-1-d)
  decay_n     // |d_x^a V| <= C (1+|x|)^(-n-d-a) (1+|y|)^(-2-d)
};

struct CertificateEntry {
  int alpha = 0;
  double max_ratio = 0;  // max over the grid of |d_x^alpha V| / (C * envelope)
  double worst_x = 0, worst_y = 0;
};

struct DecayCertificate {
  EnvelopeKind kind = EnvelopeKind::admission;
  int tested_n = 2;
  std::array<CertificateEntry, 3> entries{};
  int checked = 0;  // admission checks alpha = 0, 1; decay_n checks 0, 1, 2
  bool pass = true;
  double max_ratio() const;
};

// Report only. `tested_n` < 0 means "use the potential's own decay_n"; the
// constants are always the declared ones.
DecayCertificate certify_decay(const PotentialSpec& spec, const GridSpec& grid,
                               EnvelopeKind kind = EnvelopeKind::decay_n, int tested_n = -1);

struct PotentialFields {
  RVector v, dx, dxx;
  DecayCertificate certificate;
};

// Samples V, d_x V, d_x^2 V at every grid point. Throws DecayCertificateError
// if the admission envelope is exceeded by more than 1%.
PotentialFields eval_potential(const PotentialSpec& spec, const GridSpec& grid);

}  // namespace sslab
