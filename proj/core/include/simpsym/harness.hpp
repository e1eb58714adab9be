#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "simpsym/types.hpp"

namespace simpsym::harness {

enum class Scheme { newmark, simpson, exact };

/// One reproduction experiment: oscillator parameters, how many periods to
/// integrate, and which mesh resolutions to run.
struct ExperimentSpec {
  double mass = 1.0;
  double omega = 0.0;
  int period_count = 1;
  std::vector<int> mesh_counts;
  Scheme scheme = Scheme::newmark;
  PhaseState initial_state;
};

/// Total integration time: period_count oscillator periods (2 pi / omega);
/// for omega = 0 one "period" counts as unit time.
double total_time(const ExperimentSpec& spec);

/// Throws ConfigError unless mass > 0, omega >= 0, period_count >= 1 and
/// mesh_counts is strictly increasing with every N >= 2.
void validate(const ExperimentSpec& spec);

/// Sampled trajectory: N+1 nodes of times, states and both energies.
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<PhaseState> states;
  std::vector<double> energies_exact;
  std::vector<double> energies_discrete;
};

/// Max-norm deviations of a record from the closed-form solution, and of
/// both energies from their initial values.
struct MaxNormErrors {
  double momentum = 0.0;
  double state = 0.0;
  double energy_exact = 0.0;
  double energy_discrete = 0.0;
};

struct ConvergenceVerdict {
  enum class Kind { order, exact_conservation, indeterminate };
  Kind kind = Kind::indeterminate;
  int order = 0;
};

/// Per-quantity convergence data across the meshes of one experiment.
struct QuantitySeries {
  std::vector<double> errors;
  /// log2(e_N / e_2N) for consecutive meshes; empty with a single mesh.
  std::vector<double> orders;
  ConvergenceVerdict verdict;
};

struct ConvergenceReport {
  std::vector<int> mesh_counts;
  QuantitySeries momentum;
  QuantitySeries state;
  QuantitySeries energy_exact;
  QuantitySeries energy_discrete;
};

/// Least-squares fit of log|residual| against log h for the three-point
/// scheme evaluated on closed-form solution samples.
struct TruncationFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  /// Points that survived the round-off exclusion; the fit needs >= 2.
  int points_used = 0;
};

struct SymplecticityReport {
  double max_abs_det_minus_one = 0.0;
  std::size_t samples = 0;
};

/// Integrate N steps of h = T/N with the requested scheme (or sample the
/// closed-form flow).  Simpson runs require omega*h inside (0, 2*sqrt(2));
/// violations throw StabilityWindowError.
TrajectoryRecord run_trajectory(const ExperimentSpec& spec, int mesh_count);

/// e_p = max_j |p_j - p_exact(t_j)|, e_q likewise; energy errors are
/// max_j |E_j - E_0| for E = H and E = H_d.
MaxNormErrors max_norm_errors(const ExperimentSpec& spec,
                              const TrajectoryRecord& record);

/// Pairwise orders log2(e_N / e_2N) and a verdict: the nearest integer when
/// the errors decay monotonically, "exact conservation" when every error
/// sits below the round-off threshold 1e-11, indeterminate otherwise (never
/// a fabricated order).
QuantitySeries estimate_orders(const std::vector<double>& errors);

/// Full study: run every mesh, collect errors, estimate orders per quantity.
ConvergenceReport convergence_study(const ExperimentSpec& spec);

/// Evaluate the three-point residual on q(t) = sin(omega t) around t_center
/// for each h, excluding values below 1e3 * eps * (term magnitude), and fit
/// log|residual| = exponent * log h + log prefactor.
TruncationFit truncation_error_probe(double omega, double t_center,
                                     std::span<const double> steps);

/// max |det - 1| of the scheme's propagator over a grid of s = omega*h.
SymplecticityReport symplecticity_audit(Scheme scheme,
                                        std::span<const double> s_values);

std::string to_string(Scheme scheme);
std::string to_string(const ConvergenceVerdict& verdict);

}  // namespace simpsym::harness
