#pragma once

#include "simpsym/types.hpp"

namespace simpsym {

/// Characteristic-root analysis of the fourth-order scheme at s = omega*h.
struct StabilityVerdict {
  double s = 0.0;
  bool stable = false;
  /// b^2 - 4ac of the characteristic polynomial a r^2 + b r + c.
  double discriminant = 0.0;
  /// Largest root modulus; exactly 1 on the unit circle (complex pair).
  double root_modulus = 0.0;
};

/// Coefficients of a quadratic invariant Q(p,q) = xi/2 p^2 + eta p q + zeta/2 q^2.
struct QuadraticForm {
  double xi = 0.0;
  double eta = 0.0;
  double zeta = 0.0;
  /// Set when the propagator is (numerically) the identity, which pins no
  /// direction: the returned coefficients are all zero.
  bool degenerate = false;
};

/// One step of the second-order midpoint scheme,
///   1/(1 + s^2/4) * [ 1 - s^2/4,  -m w^2 h ]
///                   [ h/m,         1 - s^2/4 ],  s = omega*h.
/// Unit determinant for every valid config; unconditionally usable.
Propagator newmark_propagator(const OscillatorConfig& cfg);

/// One step of the fourth-order Simpson scheme,
///   1/(1 + s^2/24) * [ 1 - 11/24 s^2 + s^4/48,  -m w^2 h (1 - s^2/12)(1 - s^2/24) ]
///                    [ h/m (1 - s^2/8),          1 - 11/24 s^2 + s^4/48          ].
/// Throws SingularEliminationError when s^2 sits on the elimination pole at 8
/// (within a few ulps; no representable s squares to 8 exactly).  Outside the
/// window 0 < s < 2*sqrt(2) the matrix is still returned for analysis use and
/// *outside_window, when given, is set.
Propagator simpson_propagator(const OscillatorConfig& cfg,
                              bool* outside_window = nullptr);

/// Closed-form solution state at time t from initial state y0.
/// omega = 0 degenerates to free drift q0 + p0 t / m.
PhaseState exact_flow(const OscillatorConfig& cfg, const PhaseState& y0,
                      double t);

/// H(p,q) = p^2/(2m) + m w^2 q^2 / 2.
double energy_exact(const OscillatorConfig& cfg, const PhaseState& y);

/// Quadratic form conserved exactly by the Simpson scheme,
///   H_d(p,q) = p^2/(2m) + (m w^2/2) (1 - s^2/12)(1 - s^2/24)/(1 - s^2/8) q^2.
/// Throws SingularEliminationError on the s^2 = 8 pole.
double energy_discrete_simpson(const OscillatorConfig& cfg,
                               const PhaseState& y);

/// Roots of the characteristic polynomial of the fourth-order three-point
/// scheme: a = 1 + s^2/24, b = -(48 - 22 s^2 + s^4)/24, and c = a by the
/// left/right symmetry of the scheme.  Stable means a complex-conjugate pair
/// on the unit circle AND s inside the window 0 < s < 2*sqrt(2) where the
/// internal-node elimination is well posed; past the pole the roots can sit
/// on the unit circle again, but the scheme itself is no longer meaningful,
/// so those s report unstable.  Boundary points (discriminant exactly 0)
/// report unstable; callers needing marginal cases have the discriminant and
/// root modulus.  The verdict is cross-checked against the closed-form
/// window before returning.
StabilityVerdict stability_analysis(double s);

/// Coefficients of the invariant Q(p,q) = gamma/2 p^2 - beta/2 q^2 preserved
/// by a unit-determinant propagator [[alpha, beta], [gamma, alpha]] with
/// equal diagonals (normalized so xi = gamma, eta = 0).  Throws
/// NotSymplecticError if det differs from 1 beyond tolerance and
/// UnsupportedFormError if the diagonals differ.
QuadraticForm conserved_quadratic_form(const Propagator& prop);

}  // namespace simpsym
