#include "simpsym/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "detail.hpp"
#include "simpsym/errors.hpp"
#include "simpsym/kernel.hpp"
#include "simpsym/oscillator.hpp"

namespace simpsym::harness {
namespace {

// Errors at or below this are round-off, not discretization.
constexpr double kRoundoffThreshold = 1e-11;

OscillatorConfig config_for(const ExperimentSpec& spec, int mesh_count) {
  return {spec.mass, spec.omega, total_time(spec) / mesh_count};
}

}  // namespace

double total_time(const ExperimentSpec& spec) {
  if (spec.omega == 0.0) {
    return static_cast<double>(spec.period_count);
  }
  return spec.period_count * (2.0 * std::numbers::pi / spec.omega);
}

void validate(const ExperimentSpec& spec) {
  if (!(spec.mass > 0.0) || !(spec.omega >= 0.0) || spec.period_count < 1 ||
      !std::isfinite(spec.mass) || !std::isfinite(spec.omega)) {
    throw ConfigError("experiment needs mass > 0, omega >= 0, period_count >= 1");
  }
  if (spec.mesh_counts.empty()) {
    throw ConfigError("experiment needs at least one mesh");
  }
  int previous = 1;
  for (int n : spec.mesh_counts) {
    if (n < 2 || n <= previous) {
      throw ConfigError("mesh counts must be strictly increasing and >= 2");
    }
    previous = n;
  }
}

TrajectoryRecord run_trajectory(const ExperimentSpec& spec, int mesh_count) {
  if (mesh_count < 2) {
    throw ConfigError("a trajectory needs at least 2 steps");
  }
  const OscillatorConfig cfg = config_for(spec, mesh_count);
  const double h = cfg.step();

  Propagator prop;
  switch (spec.scheme) {
    case Scheme::newmark:
      prop = newmark_propagator(cfg);
      break;
    case Scheme::simpson: {
      const double s = cfg.omega_h();
      if (!(s > 0.0 && s < detail::kWindowTop)) {
        throw StabilityWindowError(
            "Simpson runs need omega*h inside 0 < omega*h < 2*sqrt(2)");
      }
      prop = simpson_propagator(cfg);
      break;
    }
    case Scheme::exact:
      break;
  }

  TrajectoryRecord record;
  record.times.reserve(mesh_count + 1);
  record.states.reserve(mesh_count + 1);
  record.energies_exact.reserve(mesh_count + 1);
  record.energies_discrete.reserve(mesh_count + 1);

  PhaseState y = spec.initial_state;
  for (int j = 0; j <= mesh_count; ++j) {
    const double t = j * h;
    if (j > 0) {
      y = (spec.scheme == Scheme::exact) ? exact_flow(cfg, spec.initial_state, t)
                                         : prop.apply(y);
    }
    record.times.push_back(t);
    record.states.push_back(y);
    record.energies_exact.push_back(energy_exact(cfg, y));
    record.energies_discrete.push_back(energy_discrete_simpson(cfg, y));
  }
  return record;
}

MaxNormErrors max_norm_errors(const ExperimentSpec& spec,
                              const TrajectoryRecord& record) {
  if (record.states.empty()) {
    throw ConfigError("empty trajectory record");
  }
  const OscillatorConfig cfg{spec.mass, spec.omega,
                             record.times.size() > 1
                                 ? record.times[1] - record.times[0]
                                 : 1.0};
  MaxNormErrors errors;
  for (std::size_t j = 0; j < record.states.size(); ++j) {
    const PhaseState ref = exact_flow(cfg, spec.initial_state, record.times[j]);
    errors.momentum =
        std::fmax(errors.momentum, std::fabs(record.states[j].p - ref.p));
    errors.state = std::fmax(errors.state, std::fabs(record.states[j].q - ref.q));
    errors.energy_exact =
        std::fmax(errors.energy_exact,
                  std::fabs(record.energies_exact[j] - record.energies_exact[0]));
    errors.energy_discrete =
        std::fmax(errors.energy_discrete,
                  std::fabs(record.energies_discrete[j] -
                            record.energies_discrete[0]));
  }
  return errors;
}

QuantitySeries estimate_orders(const std::vector<double>& errors) {
  QuantitySeries series;
  series.errors = errors;
  if (errors.empty()) {
    return series;
  }

  const bool all_roundoff = std::all_of(errors.begin(), errors.end(), [](double e) {
    return e <= kRoundoffThreshold;
  });
  if (all_roundoff) {
    series.verdict.kind = ConvergenceVerdict::Kind::exact_conservation;
    return series;
  }
  const bool any_roundoff = std::any_of(errors.begin(), errors.end(), [](double e) {
    return e <= kRoundoffThreshold;
  });
  if (any_roundoff) {
    // Mixed regime: some meshes already at round-off, no clean order.
    return series;
  }

  bool monotone = true;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    series.orders.push_back(std::log2(errors[i] / errors[i + 1]));
    monotone = monotone && errors[i + 1] < errors[i];
  }
  if (series.orders.empty() || !monotone) {
    return series;
  }
  double sum = 0.0;
  for (double order : series.orders) {
    sum += order;
  }
  series.verdict.kind = ConvergenceVerdict::Kind::order;
  series.verdict.order =
      static_cast<int>(std::lround(sum / static_cast<double>(series.orders.size())));
  return series;
}

ConvergenceReport convergence_study(const ExperimentSpec& spec) {
  validate(spec);
  ConvergenceReport report;
  report.mesh_counts = spec.mesh_counts;

  std::vector<double> e_p, e_q, e_h, e_hd;
  for (int mesh : spec.mesh_counts) {
    const TrajectoryRecord record = run_trajectory(spec, mesh);
    const MaxNormErrors errors = max_norm_errors(spec, record);
    e_p.push_back(errors.momentum);
    e_q.push_back(errors.state);
    e_h.push_back(errors.energy_exact);
    e_hd.push_back(errors.energy_discrete);
  }
  report.momentum = estimate_orders(e_p);
  report.state = estimate_orders(e_q);
  report.energy_exact = estimate_orders(e_h);
  report.energy_discrete = estimate_orders(e_hd);
  return report;
}

TruncationFit truncation_error_probe(double omega, double t_center,
                                     std::span<const double> steps) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  TruncationFit fit;

  std::vector<double> log_h, log_res;
  for (double h : steps) {
    const OscillatorConfig cfg{1.0, omega, h};
    const double q_prev = std::sin(omega * (t_center - h));
    const double q_cur = std::sin(omega * t_center);
    const double q_next = std::sin(omega * (t_center + h));
    const double residual =
        kernel::discrete_el_residual_threepoint(cfg, q_prev, q_cur, q_next);
    const double w_sq = omega * omega;
    const double magnitude =
        (std::fabs(q_next) + 2.0 * std::fabs(q_cur) + std::fabs(q_prev)) / (h * h) +
        w_sq / 24.0 * (std::fabs(q_next) + 22.0 * std::fabs(q_cur) + std::fabs(q_prev)) +
        w_sq * w_sq * h * h / 24.0 * std::fabs(q_cur);
    if (std::fabs(residual) < 1e3 * eps * magnitude) {
      continue;  // round-off regime, not part of the law
    }
    log_h.push_back(std::log(h));
    log_res.push_back(std::log(std::fabs(residual)));
  }

  fit.points_used = static_cast<int>(log_h.size());
  if (fit.points_used < 2) {
    fit.exponent = std::numeric_limits<double>::quiet_NaN();
    fit.prefactor = std::numeric_limits<double>::quiet_NaN();
    return fit;
  }

  double mean_x = 0.0, mean_y = 0.0;
  for (int i = 0; i < fit.points_used; ++i) {
    mean_x += log_h[i];
    mean_y += log_res[i];
  }
  mean_x /= fit.points_used;
  mean_y /= fit.points_used;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < fit.points_used; ++i) {
    sxx += (log_h[i] - mean_x) * (log_h[i] - mean_x);
    sxy += (log_h[i] - mean_x) * (log_res[i] - mean_y);
  }
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(mean_y - fit.exponent * mean_x);
  return fit;
}

SymplecticityReport symplecticity_audit(Scheme scheme,
                                        std::span<const double> s_values) {
  if (scheme == Scheme::exact) {
    throw ConfigError("the audit covers the discrete schemes");
  }
  SymplecticityReport report;
  for (double s : s_values) {
    const OscillatorConfig cfg =
        (s == 0.0) ? OscillatorConfig{1.0, 0.0, 1.0} : OscillatorConfig{1.0, 1.0, s};
    const Propagator prop = (scheme == Scheme::newmark)
                                ? newmark_propagator(cfg)
                                : simpson_propagator(cfg);
    report.max_abs_det_minus_one = std::fmax(report.max_abs_det_minus_one,
                                             std::fabs(prop.determinant() - 1.0));
    ++report.samples;
  }
  return report;
}

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::newmark:
      return "newmark";
    case Scheme::simpson:
      return "simpson";
    case Scheme::exact:
      return "exact";
  }
  return "unknown";
}

std::string to_string(const ConvergenceVerdict& verdict) {
  switch (verdict.kind) {
    case ConvergenceVerdict::Kind::order:
      return "order-" + std::to_string(verdict.order);
    case ConvergenceVerdict::Kind::exact_conservation:
      return "exact";
    case ConvergenceVerdict::Kind::indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

}  // namespace simpsym::harness
