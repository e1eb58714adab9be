#pragma once

#include "simpsym/types.hpp"

namespace simpsym::kernel {

/// Nodal values of one quadratic element on [t, t+h]: left end, midpoint,
/// right end, and the step length h > 0.
struct QuadraticElement {
  double q_l = 0.0;
  double q_m = 0.0;
  double q_r = 0.0;
  double h = 1.0;
};

/// Values of the three quadratic shape functions at a reference point.
struct BasisValues {
  double phi_l = 0.0;
  double phi_m = 0.0;
  double phi_r = 0.0;
};

/// Endpoint and midpoint velocities of a quadratic element.
struct GearDerivatives {
  double g_l = 0.0;
  double g_m = 0.0;
  double g_r = 0.0;
};

/// Potential energy V(q).  second_derivative defaults to a central finite
/// difference of derivative() with step eps^(1/3) * max(1, |q|), enough for
/// Newton; override it when the second derivative is cheap.
class Potential {
 public:
  virtual ~Potential() = default;
  virtual double value(double q) const = 0;
  virtual double derivative(double q) const = 0;
  virtual double second_derivative(double q) const;
};

/// V(q) = m w^2 q^2 / 2.
class HarmonicPotential final : public Potential {
 public:
  HarmonicPotential(double mass, double omega) : mass_(mass), omega_(omega) {}
  double value(double q) const override {
    return 0.5 * mass_ * omega_ * omega_ * q * q;
  }
  double derivative(double q) const override {
    return mass_ * omega_ * omega_ * q;
  }
  double second_derivative(double) const override {
    return mass_ * omega_ * omega_;
  }

 private:
  double mass_;
  double omega_;
};

/// Quadratic shape functions at theta in [0,1]:
///   phi_l = (1-theta)(1-2theta), phi_m = 4 theta (1-theta),
///   phi_r = theta (2theta - 1).
/// Throws DomainError outside [0,1].
BasisValues basis_eval(double theta);

/// q_l phi_l + q_m phi_m + q_r phi_r at theta.
double interpolate(const QuadraticElement& elem, double theta);

/// Endpoint derivatives of the quadratic interpolant,
///   g_l = (-3 q_l + 4 q_m - q_r)/h,   g_r = (q_l - 4 q_m + 3 q_r)/h,
/// and the midpoint slope g_m = (q_r - q_l)/h = (g_l + g_r)/2.
GearDerivatives gear_derivatives(const QuadraticElement& elem);

/// (1/6) [f(0) + 4 f(1/2) + f(1)]; exact for polynomials of degree <= 3.
template <class F>
double simpson_quadrature(F&& f) {
  return (f(0.0) + 4.0 * f(0.5) + f(1.0)) / 6.0;
}

/// Midpoint-quadrature discrete Lagrangian
///   L_d(q_l, q_r) = (m h/2) ((q_r - q_l)/h)^2 - h V((q_l + q_r)/2).
double discrete_lagrangian_midpoint(const OscillatorConfig& cfg,
                                    const Potential& V, double q_l,
                                    double q_r);

/// Simpson-quadrature discrete Lagrangian on one quadratic element,
///   L_h = (m h/12)(g_l^2 + 4 g_m^2 + g_r^2) - (h/6)(V(q_l) + 4 V(q_m) + V(q_r)).
double discrete_lagrangian_simpson(const OscillatorConfig& cfg,
                                   const Potential& V, double q_l, double q_m,
                                   double q_r);

/// Stationarity condition dL_h/dq_m = 0 solved in closed form for the
/// harmonic potential: q_m = (q_l + q_r) / (2 (1 - s^2/8)), s = omega*h.
/// Throws SingularEliminationError on the s^2 = 8 pole.
double internal_node_harmonic(const OscillatorConfig& cfg, double q_l,
                              double q_r);

/// m (4/h^2)(q_l - 2 q_m + q_r) + V'(q_m); equals dL_h/dq_m up to the
/// constant factor -(2h/3), so its root is the stationary internal node.
double internal_node_residual(const OscillatorConfig& cfg, const Potential& V,
                              double q_l, double q_m, double q_r);

/// Newton iteration on internal_node_residual with Jacobian
/// -8m/h^2 + V''(q_m).  Converged when |residual| <= tol * (1 + 4m/h^2 *
/// max(|q_l|, |q_r|)).  Throws ConvergenceError (carrying the last iterate
/// and residual) when max_iter runs out, DomainError on a singular Jacobian.
double internal_node_newton(const OscillatorConfig& cfg, const Potential& V,
                            double q_l, double q_r, double guess,
                            double tol = 1e-12, int max_iter = 50);

/// Harmonic Simpson Lagrangian with the internal node eliminated:
///   L_h^r(q_l, q_r) = 1/(1 - s^2/8) [ (m h/2)((q_r - q_l)/h)^2
///       - (h/2) m w^2 ( (22 - s^2)/48 (q_l^2 + q_r^2) + q_l q_r / 12 ) ].
/// Throws SingularEliminationError on the s^2 = 8 pole.
double reduced_lagrangian(const OscillatorConfig& cfg, double q_l, double q_r);

/// Residual of the fourth-order three-point scheme at a node:
///   (q_next - 2 q_cur + q_prev)/h^2 + (w^2/24)(q_next + 22 q_cur + q_prev)
///     - (w^4 h^2/24) q_cur.
/// Proportional to the two-interval discrete Euler-Lagrange expression of
/// the reduced Lagrangian (factor -m h / (1 - s^2/8)).
double discrete_el_residual_threepoint(const OscillatorConfig& cfg,
                                       double q_prev, double q_cur,
                                       double q_next);

/// Right-endpoint discrete momentum of the reduced Lagrangian,
///   p_r = m (q_r - q_l)/h - h (m w^2/6)(q_l + 2 q_r)/(1 - s^2/8)
///         + h^3 (m w^4/48) q_r/(1 - s^2/8),
/// kept in exactly this grouping so results are reproducible bit for bit.
/// Throws SingularEliminationError on the s^2 = 8 pole.
double momentum_simpson(const OscillatorConfig& cfg, double q_l, double q_r);

/// Simpson Lagrangian with the internal node eliminated by Newton; works for
/// any potential.  Equals reduced_lagrangian for the harmonic one.
double eliminated_lagrangian(const OscillatorConfig& cfg, const Potential& V,
                             double q_l, double q_r, double tol = 1e-12,
                             int max_iter = 50);

/// Partial derivatives of eliminated_lagrangian in its endpoints.  The
/// stationarity of the internal node makes the chain-rule term vanish, so
///   d/dq_l = (m/6)(-3 g_l - 4 g_m + g_r) - (h/6) V'(q_l),
///   d/dq_r = (m/6)(-g_l + 4 g_m + 3 g_r) - (h/6) V'(q_r),
/// evaluated at the eliminated internal node.
double eliminated_lagrangian_d_left(const OscillatorConfig& cfg,
                                    const Potential& V, double q_l, double q_r,
                                    double tol = 1e-12, int max_iter = 50);
double eliminated_lagrangian_d_right(const OscillatorConfig& cfg,
                                     const Potential& V, double q_l,
                                     double q_r, double tol = 1e-12,
                                     int max_iter = 50);

/// One step of the Simpson scheme for a generic potential, in
/// position-momentum form: solves p + dL/dq_l (q, q_next) = 0 for q_next
/// (the two-interval discrete Euler-Lagrange condition, with the internal
/// node re-eliminated at every trial point), then reads the new momentum off
/// dL/dq_r.  Experimental plumbing: exercised for consistency, not tuned.
/// Throws ConvergenceError when the outer solve stalls.
PhaseState simpson_step_implicit(const OscillatorConfig& cfg,
                                 const Potential& V, const PhaseState& y,
                                 double tol = 1e-12, int max_iter = 50);

}  // namespace simpsym::kernel
