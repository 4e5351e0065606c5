#pragma once

#include <cstdint>
#include <vector>

#include "hetnet/model.hpp"

namespace hetnet {

enum class Tier1Placement { kPpp, kHexGrid };

/// Serial runs the reference trial loop; parallel runs the OpenMP kernel.
/// Both produce bit-identical outcome streams by construction (every trial
/// draws from its own counter-based substream), which the tests verify.
enum class ExecutionMode { kSerial, kParallel };

struct SimulationConfig {
  /// Sampling disk radius in meters; <= 0 selects the automatic radius with
  /// an expected 10,000 stations in the window.
  double window_radius = 0.0;
  std::int64_t trials = 10000;
  std::uint64_t seed = 0;
  Tier1Placement tier1_placement = Tier1Placement::kPpp;
  /// Per-tier linear thresholds replacing the model's for the coverage
  /// decision (empty: use the model's). The simulator accepts values <= 1;
  /// only the analytic expressions are gated at 0 dB.
  std::vector<double> thresholds_override;
  ExecutionMode mode = ExecutionMode::kParallel;
};

struct TrialOutcome {
  bool covered = false;
  int serving_tier = 0;  // 1-based; 0 when not covered
  double max_sinr = 0.0;
  int num_above_threshold = 0;
};

/// Radius with an expected total of 10,000 stations across all tiers.
double auto_window_radius(const NetworkModel& model);
double resolved_window_radius(const NetworkModel& model, const SimulationConfig& config);

/// Draws one realization: per tier a Poisson number of uniform positions in
/// the window disk (tier 1 optionally a randomly translated and rotated
/// hexagonal lattice of the same density), each station with an independent
/// unit-mean exponential fading. Fully determined by (seed, trial_index).
Deployment sample_deployment(const NetworkModel& model, const SimulationConfig& config,
                             std::int64_t trial_index);

/// Downlink SINR of one station at the origin; every other station
/// interferes regardless of access policy.
double sinr_at_origin(const Deployment& deployment, const NetworkModel& model,
                      std::size_t station);

/// Max-SINR association restricted to allowed tiers. num_above_threshold
/// counts allowed-tier stations above their tier threshold, so
/// covered <=> num_above_threshold >= 1.
TrialOutcome evaluate_trial(const Deployment& deployment, const NetworkModel& model,
                            const AccessPolicy& policy);

/// Number of stations (all tiers) with SINR strictly above x; instrumentation
/// for the at-most-m-above-1/m invariant.
int count_sinr_above(const Deployment& deployment, const NetworkModel& model, double x);

/// Runs all trials and returns the outcome stream in trial order.
std::vector<TrialOutcome> run_trials(const NetworkModel& model, const AccessPolicy& policy,
                                     const SimulationConfig& config);

// Order-fixed reductions of an outcome stream.
EstimateWithCI reduce_coverage(const std::vector<TrialOutcome>& outcomes, std::uint64_t seed);
std::vector<EstimateWithCI> reduce_load(const std::vector<TrialOutcome>& outcomes,
                                        int num_tiers, std::uint64_t seed);
EstimateWithCI reduce_rate(const std::vector<TrialOutcome>& outcomes, std::uint64_t seed);

/// Fraction of covered trials, with binomial standard error.
EstimateWithCI estimate_coverage(const NetworkModel& model, const AccessPolicy& policy,
                                 const SimulationConfig& config);

/// Fraction of covered trials served by each tier (conditional on coverage).
/// Throws NoCoveredTrials when no trial is covered.
std::vector<EstimateWithCI> estimate_load(const NetworkModel& model, const AccessPolicy& policy,
                                          const SimulationConfig& config);

/// Sample mean of log(1 + max SINR) over covered trials, standard error of
/// the mean. Throws NoCoveredTrials when no trial is covered.
EstimateWithCI estimate_rate(const NetworkModel& model, const AccessPolicy& policy,
                             const SimulationConfig& config);

}  // namespace hetnet
