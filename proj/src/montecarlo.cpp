#include "hetnet/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hetnet/rng.hpp"

namespace hetnet {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kAutoWindowExpectedStations = 1e4;

// Substream tags for per-(trial, tier) draws that are not station-indexed.
// Station substreams use the station index itself, which stays far below
// these values for any realistic window.
constexpr std::uint64_t kCountTag = (1ULL << 62) + 1;
constexpr std::uint64_t kHexTag = (1ULL << 62) + 2;

void sample_tier_ppp(std::vector<Station>& stations, double density, int tier, double radius,
                     std::uint64_t seed, std::int64_t trial) {
  SubstreamRng count_rng(SubstreamRng::derive_key(seed, trial, tier, kCountTag));
  const std::int64_t n = poisson_sample(count_rng, density * kPi * radius * radius);
  for (std::int64_t s = 0; s < n; ++s) {
    SubstreamRng rng(SubstreamRng::derive_key(seed, trial, tier, s));
    const double r = radius * std::sqrt(rng.next_uniform());
    const double theta = 2.0 * kPi * rng.next_uniform();
    stations.push_back(Station{{r * std::cos(theta), r * std::sin(theta)}, tier,
                               rng.next_exponential()});
  }
}

// Triangular lattice whose cell area is 1/density, uniformly translated
// within one fundamental cell and uniformly rotated, so the origin is a
// uniform point of a stationary grid ensemble.
void sample_tier_hexgrid(std::vector<Station>& stations, double density, int tier, double radius,
                         std::uint64_t seed, std::int64_t trial) {
  const double spacing = std::sqrt(2.0 / (std::sqrt(3.0) * density));
  SubstreamRng grid_rng(SubstreamRng::derive_key(seed, trial, tier, kHexTag));
  const double phi = 2.0 * kPi * grid_rng.next_uniform();
  const double shift_u = grid_rng.next_uniform();
  const double shift_v = grid_rng.next_uniform();
  const double cos_phi = std::cos(phi);
  const double sin_phi = std::sin(phi);

  const double row_height = spacing * std::sqrt(3.0) / 2.0;
  const int n_range = static_cast<int>(std::ceil(radius / row_height)) + 2;
  const double r2 = radius * radius;

  std::int64_t index = 0;
  for (int n = -n_range; n <= n_range; ++n) {
    const double y = (n + shift_v) * row_height;
    const double x_offset = (n + shift_v) * 0.5 * spacing;
    const int m_lo = static_cast<int>(std::floor((-radius - spacing - x_offset) / spacing));
    const int m_hi = static_cast<int>(std::ceil((radius + spacing - x_offset) / spacing));
    for (int m = m_lo; m <= m_hi; ++m) {
      const double x = (m + shift_u) * spacing + x_offset;
      if (x * x + y * y > r2) continue;
      SubstreamRng rng(SubstreamRng::derive_key(seed, trial, tier, index++));
      stations.push_back(Station{{x * cos_phi - y * sin_phi, x * sin_phi + y * cos_phi},
                                 tier, rng.next_exponential()});
    }
  }
}

void sample_deployment_into(Deployment& out, const NetworkModel& model,
                            const SimulationConfig& config, std::int64_t trial) {
  const double radius = resolved_window_radius(model, config);
  out.window_radius = radius;
  out.stations.clear();
  for (int tier = 1; tier <= model.num_tiers(); ++tier) {
    const double density = model.tiers[tier - 1].density;
    if (tier == 1 && config.tier1_placement == Tier1Placement::kHexGrid)
      sample_tier_hexgrid(out.stations, density, tier, radius, config.seed, trial);
    else
      sample_tier_ppp(out.stations, density, tier, radius, config.seed, trial);
  }
}

NetworkModel apply_threshold_override(const NetworkModel& model, const SimulationConfig& config) {
  if (config.thresholds_override.empty()) return model;
  if (config.thresholds_override.size() != model.tiers.size())
    throw std::invalid_argument("thresholds_override must list one value per tier");
  NetworkModel adjusted = model;
  for (std::size_t i = 0; i < adjusted.tiers.size(); ++i)
    adjusted.tiers[i].threshold = config.thresholds_override[i];
  return adjusted;
}

double received_power(const Station& s, const NetworkModel& model) {
  const double d2 = s.position.x * s.position.x + s.position.y * s.position.y;
  return model.tiers[s.tier - 1].power * s.fading * std::pow(d2, -0.5 * model.alpha);
}

}  // namespace

double auto_window_radius(const NetworkModel& model) {
  double total_density = 0.0;
  for (const TierParams& t : model.tiers) total_density += t.density;
  return std::sqrt(kAutoWindowExpectedStations / (kPi * total_density));
}

double resolved_window_radius(const NetworkModel& model, const SimulationConfig& config) {
  return config.window_radius > 0.0 ? config.window_radius : auto_window_radius(model);
}

Deployment sample_deployment(const NetworkModel& model, const SimulationConfig& config,
                             std::int64_t trial_index) {
  Deployment d;
  sample_deployment_into(d, model, config, trial_index);
  return d;
}

double sinr_at_origin(const Deployment& deployment, const NetworkModel& model,
                      std::size_t station) {
  const Station& s = deployment.stations.at(station);
  if (s.position.x == 0.0 && s.position.y == 0.0)
    raise(ErrorCode::StationAtOrigin, "station " + std::to_string(station) + " sits at the origin");
  double interference = model.noise;
  for (std::size_t i = 0; i < deployment.stations.size(); ++i) {
    if (i == station) continue;
    interference += received_power(deployment.stations[i], model);
  }
  return received_power(s, model) / interference;
}

TrialOutcome evaluate_trial(const Deployment& deployment, const NetworkModel& model,
                            const AccessPolicy& policy) {
  TrialOutcome outcome;
  const std::size_t n = deployment.stations.size();
  if (n == 0) return outcome;

  thread_local std::vector<double> received;
  received.resize(n);
  double total = 0.0;
  std::size_t best = n;  // strongest allowed station; its SINR is the max
  for (std::size_t i = 0; i < n; ++i) {
    received[i] = received_power(deployment.stations[i], model);
    total += received[i];
    if (policy.allows(deployment.stations[i].tier) &&
        (best == n || received[i] > received[best]))
      best = i;
  }
  if (best == n) return outcome;  // no allowed station in the window

  // SINR is monotone in received power, so only the strongest station needs
  // the cancellation-free interference sum; S - w_i is accurate for the rest.
  double best_interference = model.noise;
  for (std::size_t i = 0; i < n; ++i)
    if (i != best) best_interference += received[i];
  outcome.max_sinr = received[best] / best_interference;
  outcome.serving_tier = deployment.stations[best].tier;
  if (outcome.max_sinr > model.tiers[outcome.serving_tier - 1].threshold)
    ++outcome.num_above_threshold;

  for (std::size_t i = 0; i < n; ++i) {
    if (i == best) continue;
    const Station& s = deployment.stations[i];
    if (!policy.allows(s.tier)) continue;
    const double sinr = received[i] / (total - received[i] + model.noise);
    if (sinr > model.tiers[s.tier - 1].threshold) ++outcome.num_above_threshold;
  }
  outcome.covered = outcome.num_above_threshold >= 1;
  if (!outcome.covered) outcome.serving_tier = 0;
  return outcome;
}

int count_sinr_above(const Deployment& deployment, const NetworkModel& model, double x) {
  const std::size_t n = deployment.stations.size();
  if (n == 0) return 0;
  std::vector<double> received(n);
  double total = 0.0;
  std::size_t strongest = 0;
  for (std::size_t i = 0; i < n; ++i) {
    received[i] = received_power(deployment.stations[i], model);
    total += received[i];
    if (received[i] > received[strongest]) strongest = i;
  }
  double strongest_interference = model.noise;
  for (std::size_t i = 0; i < n; ++i)
    if (i != strongest) strongest_interference += received[i];

  int count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sinr = i == strongest
                            ? received[i] / strongest_interference
                            : received[i] / (total - received[i] + model.noise);
    if (sinr > x) ++count;
  }
  return count;
}

std::vector<TrialOutcome> run_trials(const NetworkModel& model, const AccessPolicy& policy,
                                     const SimulationConfig& config) {
  validate(model);
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const NetworkModel effective = apply_threshold_override(model, config);
  (void)policy.allowed_in(effective.num_tiers());  // validate tier references

  std::vector<TrialOutcome> outcomes(config.trials);
  if (config.mode == ExecutionMode::kSerial) {
    Deployment buffer;
    for (std::int64_t t = 0; t < config.trials; ++t) {
      sample_deployment_into(buffer, effective, config, t);
      outcomes[t] = evaluate_trial(buffer, effective, policy);
    }
  } else {
#pragma omp parallel
    {
      Deployment buffer;
#pragma omp for schedule(static)
      for (std::int64_t t = 0; t < config.trials; ++t) {
        sample_deployment_into(buffer, effective, config, t);
        outcomes[t] = evaluate_trial(buffer, effective, policy);
      }
    }
  }
  return outcomes;
}

EstimateWithCI reduce_coverage(const std::vector<TrialOutcome>& outcomes, std::uint64_t seed) {
  const std::int64_t n = static_cast<std::int64_t>(outcomes.size());
  std::int64_t covered = 0;
  for (const TrialOutcome& o : outcomes) covered += o.covered ? 1 : 0;
  const double p = static_cast<double>(covered) / static_cast<double>(n);
  return EstimateWithCI{p, std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n, seed};
}

std::vector<EstimateWithCI> reduce_load(const std::vector<TrialOutcome>& outcomes,
                                        int num_tiers, std::uint64_t seed) {
  std::int64_t covered = 0;
  std::vector<std::int64_t> served(num_tiers, 0);
  for (const TrialOutcome& o : outcomes) {
    if (!o.covered) continue;
    ++covered;
    if (o.serving_tier >= 1 && o.serving_tier <= num_tiers) ++served[o.serving_tier - 1];
  }
  if (covered == 0)
    raise(ErrorCode::NoCoveredTrials, "load is conditional on coverage and no trial was covered");

  std::vector<EstimateWithCI> load(num_tiers);
  for (int j = 0; j < num_tiers; ++j) {
    const double p = static_cast<double>(served[j]) / static_cast<double>(covered);
    load[j] = EstimateWithCI{p, std::sqrt(p * (1.0 - p) / static_cast<double>(covered)),
                             covered, seed};
  }
  return load;
}

EstimateWithCI reduce_rate(const std::vector<TrialOutcome>& outcomes, std::uint64_t seed) {
  std::int64_t covered = 0;
  double sum = 0.0;
  for (const TrialOutcome& o : outcomes) {
    if (!o.covered) continue;
    ++covered;
    sum += std::log1p(o.max_sinr);
  }
  if (covered == 0)
    raise(ErrorCode::NoCoveredTrials, "rate is conditional on coverage and no trial was covered");

  const double mean = sum / static_cast<double>(covered);
  double ss = 0.0;
  for (const TrialOutcome& o : outcomes) {
    if (!o.covered) continue;
    const double d = std::log1p(o.max_sinr) - mean;
    ss += d * d;
  }
  const double std_error =
      covered > 1 ? std::sqrt(ss / (static_cast<double>(covered) * static_cast<double>(covered - 1)))
                  : 0.0;
  return EstimateWithCI{mean, std_error, covered, seed};
}

EstimateWithCI estimate_coverage(const NetworkModel& model, const AccessPolicy& policy,
                                 const SimulationConfig& config) {
  return reduce_coverage(run_trials(model, policy, config), config.seed);
}

std::vector<EstimateWithCI> estimate_load(const NetworkModel& model, const AccessPolicy& policy,
                                          const SimulationConfig& config) {
  return reduce_load(run_trials(model, policy, config), model.num_tiers(), config.seed);
}

EstimateWithCI estimate_rate(const NetworkModel& model, const AccessPolicy& policy,
                             const SimulationConfig& config) {
  return reduce_rate(run_trials(model, policy, config), config.seed);
}

}  // namespace hetnet
