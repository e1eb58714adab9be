#pragma once

namespace simpsym {

/// Point in phase space: momentum p and position q.
struct PhaseState {
  double p = 0.0;
  double q = 0.0;
};

/// Mass, angular frequency and time step of a harmonic-oscillator run.
///
/// The dimensionless product omega*step drives every scheme formula, so it is
/// computed once at construction and reused identically everywhere.
class OscillatorConfig {
 public:
  /// Validates mass > 0, omega >= 0, step > 0 (all finite); throws ConfigError.
  OscillatorConfig(double mass, double omega, double step);

  double mass() const { return mass_; }
  double omega() const { return omega_; }
  double step() const { return step_; }

  /// omega * step.
  double omega_h() const { return omega_h_; }
  /// (omega * step)^2.
  double omega_h_sq() const { return omega_h_sq_; }

 private:
  double mass_;
  double omega_;
  double step_;
  double omega_h_;
  double omega_h_sq_;
};

/// One-step 2x2 propagation matrix acting on (p, q)^T.
struct Propagator {
  double a11 = 1.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 1.0;

  PhaseState apply(const PhaseState& y) const {
    return {a11 * y.p + a12 * y.q, a21 * y.p + a22 * y.q};
  }

  /// a11*a22 - a12*a21, evaluated with an fma correction so cancellation
  /// does not eat the digits that the symplecticity checks look at.
  double determinant() const;
};

}  // namespace simpsym
