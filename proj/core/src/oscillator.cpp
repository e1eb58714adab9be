#include "simpsym/oscillator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "detail.hpp"
#include "simpsym/errors.hpp"

namespace simpsym {

using detail::diff_of_products;
using detail::kWindowTop;
using detail::on_elimination_pole;

OscillatorConfig::OscillatorConfig(double mass, double omega, double step) {
  const bool finite = std::isfinite(mass) && std::isfinite(omega) && std::isfinite(step);
  if (!finite || mass <= 0.0 || omega < 0.0 || step <= 0.0) {
    throw ConfigError("oscillator config requires finite mass > 0, omega >= 0, step > 0");
  }
  mass_ = mass;
  omega_ = omega;
  step_ = step;
  omega_h_ = omega * step;
  omega_h_sq_ = omega_h_ * omega_h_;
}

double Propagator::determinant() const {
  return diff_of_products(a11, a22, a12, a21);
}

Propagator newmark_propagator(const OscillatorConfig& cfg) {
  // Entries evaluated in extended precision from a single s^2, so that the
  // stored doubles are correctly rounded and the determinant identity
  // survives to within a few ulps.
  const long double m = cfg.mass();
  const long double w = cfg.omega();
  const long double h = cfg.step();
  const long double x = (w * h) * (w * h);
  const long double denom = 1.0L + x / 4.0L;
  const long double diag = (1.0L - x / 4.0L) / denom;
  Propagator prop;
  prop.a11 = static_cast<double>(diag);
  prop.a12 = static_cast<double>(-(m * w * w * h) / denom);
  prop.a21 = static_cast<double>((h / m) / denom);
  prop.a22 = prop.a11;
  return prop;
}

Propagator simpson_propagator(const OscillatorConfig& cfg, bool* outside_window) {
  if (on_elimination_pole(cfg.omega_h_sq())) {
    throw SingularEliminationError(
        "simpson propagator: (omega*h)^2 sits on the elimination pole at 8");
  }
  if (outside_window != nullptr) {
    *outside_window = !(cfg.omega_h() < kWindowTop);
  }
  const long double m = cfg.mass();
  const long double w = cfg.omega();
  const long double h = cfg.step();
  const long double x = (w * h) * (w * h);
  const long double x2 = x * x;
  const long double denom = 1.0L + x / 24.0L;
  const long double diag = (1.0L - (11.0L / 24.0L) * x + x2 / 48.0L) / denom;
  Propagator prop;
  prop.a11 = static_cast<double>(diag);
  prop.a12 = static_cast<double>(-(m * w * w * h) * (1.0L - x / 12.0L) *
                                 (1.0L - x / 24.0L) / denom);
  prop.a21 = static_cast<double>((h / m) * (1.0L - x / 8.0L) / denom);
  prop.a22 = prop.a11;
  return prop;
}

PhaseState exact_flow(const OscillatorConfig& cfg, const PhaseState& y0, double t) {
  if (cfg.omega() == 0.0) {
    return {y0.p, y0.q + y0.p * t / cfg.mass()};
  }
  const double c = std::cos(cfg.omega() * t);
  const double s = std::sin(cfg.omega() * t);
  const double mw = cfg.mass() * cfg.omega();
  return {y0.p * c - mw * y0.q * s, y0.q * c + y0.p / mw * s};
}

double energy_exact(const OscillatorConfig& cfg, const PhaseState& y) {
  return y.p * y.p / (2.0 * cfg.mass()) +
         0.5 * cfg.mass() * cfg.omega() * cfg.omega() * y.q * y.q;
}

double energy_discrete_simpson(const OscillatorConfig& cfg, const PhaseState& y) {
  const double x = cfg.omega_h_sq();
  if (on_elimination_pole(x)) {
    throw SingularEliminationError(
        "discrete energy: (omega*h)^2 sits on the elimination pole at 8");
  }
  const double coeff = (1.0 - x / 12.0) * (1.0 - x / 24.0) / (1.0 - x / 8.0);
  return y.p * y.p / (2.0 * cfg.mass()) +
         0.5 * cfg.mass() * cfg.omega() * cfg.omega() * coeff * y.q * y.q;
}

StabilityVerdict stability_analysis(double s) {
  if (!std::isfinite(s) || s < 0.0) {
    throw ConfigError("stability analysis requires finite s >= 0");
  }
  // Coefficients and discriminant in extended precision: b^2 and 4ac cancel
  // to O(s^2) for small s, and the checks downstream compare the result
  // against the factored form at 1e-12 relative.
  const long double x = static_cast<long double>(s) * s;
  const long double a = 1.0L + x / 24.0L;
  const long double b = -(48.0L - 22.0L * x + x * x) / 24.0L;
  const long double c = a;
  const long double disc = b * b - 4.0L * a * c;

  StabilityVerdict verdict;
  verdict.s = s;
  verdict.discriminant = static_cast<double>(disc);
  if (disc < 0.0L) {
    // Complex pair; |r|^2 = c/a = 1 exactly.
    verdict.root_modulus = 1.0;
  } else {
    // Real pair; take the root of larger magnitude without cancellation.
    const long double sq = std::sqrt(disc);
    const long double big = (b >= 0.0L) ? (-b - sq) / 2.0L : (-b + sq) / 2.0L;
    const long double r1 = big / a;
    const long double r2 = c / big;
    verdict.root_modulus =
        static_cast<double>(std::fmax(std::fabs(r1), std::fabs(r2)));
  }

  // Stable = oscillatory roots on the unit circle AND inside the window
  // where the internal-node elimination is well posed.  Past the pole the
  // complex pair reappears for s^2 in (12, 24), but the scheme's derivation
  // is broken there, so it does not count.
  verdict.stable = disc < 0.0L && x < 8.0L && s > 0.0;

  const bool window = s > 0.0 && s < kWindowTop;
  if (verdict.stable != window) {
    throw std::logic_error("stability verdict diverged from the closed-form window");
  }
  return verdict;
}

QuadraticForm conserved_quadratic_form(const Propagator& prop) {
  constexpr double kDetTol = 1e-9;
  const double det = prop.determinant();
  if (!(std::fabs(det - 1.0) <= kDetTol)) {
    throw NotSymplecticError("conserved form needs det = 1 within 1e-9");
  }
  const double scale = std::fmax(std::fabs(prop.a11), std::fabs(prop.a22));
  if (!(std::fabs(prop.a11 - prop.a22) <= kDetTol * std::fmax(1.0, scale))) {
    throw UnsupportedFormError("conserved form needs equal diagonal entries");
  }
  QuadraticForm form;
  form.xi = prop.a21;
  form.eta = 0.0;
  form.zeta = -prop.a12;
  form.degenerate = (prop.a21 == 0.0 && prop.a12 == 0.0);
  return form;
}

}  // namespace simpsym
