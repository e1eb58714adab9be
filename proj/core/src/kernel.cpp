#include "simpsym/kernel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "detail.hpp"
#include "simpsym/errors.hpp"

namespace simpsym::kernel {
namespace {

double fd_step(double at) {
  const double eps = std::numeric_limits<double>::epsilon();
  return std::cbrt(eps) * std::fmax(1.0, std::fabs(at));
}

void require_positive_step(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw ConfigError("quadratic element requires a finite step h > 0");
  }
}

double pole_checked_denominator(const OscillatorConfig& cfg, const char* who) {
  const double x = cfg.omega_h_sq();
  if (detail::on_elimination_pole(x)) {
    throw SingularEliminationError(std::string(who) +
                                   ": (omega*h)^2 sits on the elimination pole at 8");
  }
  return 1.0 - x / 8.0;
}

}  // namespace

double Potential::second_derivative(double q) const {
  const double eps = fd_step(q);
  return (derivative(q + eps) - derivative(q - eps)) / (2.0 * eps);
}

BasisValues basis_eval(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw DomainError("basis functions are defined on theta in [0, 1]");
  }
  BasisValues v;
  v.phi_l = (1.0 - theta) * (1.0 - 2.0 * theta);
  v.phi_m = 4.0 * theta * (1.0 - theta);
  v.phi_r = theta * (2.0 * theta - 1.0);
  return v;
}

double interpolate(const QuadraticElement& elem, double theta) {
  const BasisValues v = basis_eval(theta);
  return elem.q_l * v.phi_l + elem.q_m * v.phi_m + elem.q_r * v.phi_r;
}

GearDerivatives gear_derivatives(const QuadraticElement& elem) {
  require_positive_step(elem.h);
  GearDerivatives g;
  g.g_l = (-3.0 * elem.q_l + 4.0 * elem.q_m - elem.q_r) / elem.h;
  g.g_r = (elem.q_l - 4.0 * elem.q_m + 3.0 * elem.q_r) / elem.h;
  g.g_m = (elem.q_r - elem.q_l) / elem.h;
  return g;
}

double discrete_lagrangian_midpoint(const OscillatorConfig& cfg,
                                    const Potential& V, double q_l,
                                    double q_r) {
  const double h = cfg.step();
  const double rate = (q_r - q_l) / h;
  return 0.5 * cfg.mass() * h * rate * rate - h * V.value(0.5 * (q_l + q_r));
}

double discrete_lagrangian_simpson(const OscillatorConfig& cfg,
                                   const Potential& V, double q_l, double q_m,
                                   double q_r) {
  const GearDerivatives g = gear_derivatives({q_l, q_m, q_r, cfg.step()});
  const double kinetic = cfg.mass() * cfg.step() / 12.0 *
                         (g.g_l * g.g_l + 4.0 * g.g_m * g.g_m + g.g_r * g.g_r);
  const double potential =
      cfg.step() / 6.0 * (V.value(q_l) + 4.0 * V.value(q_m) + V.value(q_r));
  return kinetic - potential;
}

double internal_node_harmonic(const OscillatorConfig& cfg, double q_l,
                              double q_r) {
  const double denom = pole_checked_denominator(cfg, "internal node");
  return 0.5 * (q_l + q_r) / denom;
}

double internal_node_residual(const OscillatorConfig& cfg, const Potential& V,
                              double q_l, double q_m, double q_r) {
  const double h = cfg.step();
  return cfg.mass() * 4.0 / (h * h) * (q_l - 2.0 * q_m + q_r) +
         V.derivative(q_m);
}

double internal_node_newton(const OscillatorConfig& cfg, const Potential& V,
                            double q_l, double q_r, double guess, double tol,
                            int max_iter) {
  const double h = cfg.step();
  const double scale =
      1.0 + 4.0 * cfg.mass() / (h * h) * std::fmax(std::fabs(q_l), std::fabs(q_r));
  double q_m = guess;
  double residual = internal_node_residual(cfg, V, q_l, q_m, q_r);
  for (int it = 0; it < max_iter; ++it) {
    if (std::fabs(residual) <= tol * scale) {
      return q_m;
    }
    const double jacobian = -8.0 * cfg.mass() / (h * h) + V.second_derivative(q_m);
    if (jacobian == 0.0 || !std::isfinite(jacobian)) {
      throw DomainError("internal node Newton: singular Jacobian");
    }
    q_m -= residual / jacobian;
    residual = internal_node_residual(cfg, V, q_l, q_m, q_r);
  }
  if (std::fabs(residual) <= tol * scale) {
    return q_m;
  }
  throw ConvergenceError("internal node Newton did not converge", q_m, residual);
}

double reduced_lagrangian(const OscillatorConfig& cfg, double q_l, double q_r) {
  const double denom = pole_checked_denominator(cfg, "reduced Lagrangian");
  const double m = cfg.mass();
  const double h = cfg.step();
  const double w = cfg.omega();
  const double x = cfg.omega_h_sq();
  const double rate = (q_r - q_l) / h;
  const double kinetic = 0.5 * m * h * rate * rate;
  const double potential =
      0.5 * h * m * w * w *
      ((22.0 - x) / 48.0 * (q_l * q_l + q_r * q_r) + q_l * q_r / 12.0);
  return (kinetic - potential) / denom;
}

double discrete_el_residual_threepoint(const OscillatorConfig& cfg,
                                       double q_prev, double q_cur,
                                       double q_next) {
  const double h = cfg.step();
  const double w_sq = cfg.omega() * cfg.omega();
  return (q_next - 2.0 * q_cur + q_prev) / (h * h) +
         w_sq / 24.0 * (q_next + 22.0 * q_cur + q_prev) -
         w_sq * w_sq * h * h / 24.0 * q_cur;
}

double momentum_simpson(const OscillatorConfig& cfg, double q_l, double q_r) {
  const double denom = pole_checked_denominator(cfg, "discrete momentum");
  const double m = cfg.mass();
  const double h = cfg.step();
  const double w_sq = cfg.omega() * cfg.omega();
  // Grouping kept exactly as stated in the header.
  return m * (q_r - q_l) / h - h * (m * w_sq / 6.0) * (q_l + 2.0 * q_r) / denom +
         h * h * h * (m * w_sq * w_sq / 48.0) * q_r / denom;
}

double eliminated_lagrangian(const OscillatorConfig& cfg, const Potential& V,
                             double q_l, double q_r, double tol, int max_iter) {
  const double q_m =
      internal_node_newton(cfg, V, q_l, q_r, 0.5 * (q_l + q_r), tol, max_iter);
  return discrete_lagrangian_simpson(cfg, V, q_l, q_m, q_r);
}

double eliminated_lagrangian_d_left(const OscillatorConfig& cfg,
                                    const Potential& V, double q_l, double q_r,
                                    double tol, int max_iter) {
  const double q_m =
      internal_node_newton(cfg, V, q_l, q_r, 0.5 * (q_l + q_r), tol, max_iter);
  const GearDerivatives g = gear_derivatives({q_l, q_m, q_r, cfg.step()});
  return cfg.mass() / 6.0 * (-3.0 * g.g_l - 4.0 * g.g_m + g.g_r) -
         cfg.step() / 6.0 * V.derivative(q_l);
}

double eliminated_lagrangian_d_right(const OscillatorConfig& cfg,
                                     const Potential& V, double q_l,
                                     double q_r, double tol, int max_iter) {
  const double q_m =
      internal_node_newton(cfg, V, q_l, q_r, 0.5 * (q_l + q_r), tol, max_iter);
  const GearDerivatives g = gear_derivatives({q_l, q_m, q_r, cfg.step()});
  return cfg.mass() / 6.0 * (-g.g_l + 4.0 * g.g_m + 3.0 * g.g_r) -
         cfg.step() / 6.0 * V.derivative(q_r);
}

PhaseState simpson_step_implicit(const OscillatorConfig& cfg,
                                 const Potential& V, const PhaseState& y,
                                 double tol, int max_iter) {
  const double h = cfg.step();
  const double m = cfg.mass();
  // Momentum matching: the new position solves p + dL/dq_l(q, q_next) = 0,
  // which is the two-interval discrete Euler-Lagrange condition with the
  // previous interval folded into p.
  const auto momentum_defect = [&](double q_next) {
    return y.p + eliminated_lagrangian_d_left(cfg, V, y.q, q_next, tol, max_iter);
  };
  const double scale = 1.0 + std::fabs(y.p) + m / h * std::fabs(y.q);
  double q_next = y.q + h * y.p / m;
  double defect = momentum_defect(q_next);
  for (int it = 0; it < max_iter; ++it) {
    if (std::fabs(defect) <= tol * scale) {
      break;
    }
    const double eps = fd_step(q_next);
    const double slope =
        (momentum_defect(q_next + eps) - momentum_defect(q_next - eps)) /
        (2.0 * eps);
    if (slope == 0.0 || !std::isfinite(slope)) {
      throw ConvergenceError("implicit step: flat momentum defect", q_next, defect);
    }
    q_next -= defect / slope;
    defect = momentum_defect(q_next);
  }
  if (!(std::fabs(defect) <= tol * scale)) {
    throw ConvergenceError("implicit step did not converge", q_next, defect);
  }
  return {eliminated_lagrangian_d_right(cfg, V, y.q, q_next, tol, max_iter),
          q_next};
}

}  // namespace simpsym::kernel
