#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hetnet {

enum class ErrorCode {
  AlphaOutOfRange,
  NonPositiveParameter,
  EmptyTierList,
  ThresholdTooLow,
  QuadratureFailure,
  EmptyAllowedSet,
  StationAtOrigin,
  NoCoveredTrials,
  InvalidQuantile,
  EmptyDeployment,
  ConfigError,
};

const char* error_code_name(ErrorCode code);

/// Library error carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

/// One tier of base stations.
/// power:     transmit power [W], linear
/// density:   BS density [per m^2]
/// threshold: SINR threshold [linear ratio]. The analytic expressions assume
///            threshold > 1; the type permits smaller values so the simulator
///            can probe the sub-0 dB regime.
struct TierParams {
  double power = 1.0;
  double density = 1.0;
  double threshold = 1.0;
};

/// K tiers plus path-loss exponent alpha (> 2) and noise power sigma^2 [W].
/// noise == 0 models the interference-limited network.
struct NetworkModel {
  std::vector<TierParams> tiers;
  double alpha = 4.0;
  double noise = 0.0;

  int num_tiers() const { return static_cast<int>(tiers.size()); }
};

/// Which tiers a mobile may connect to. Tier indices are 1-based throughout.
/// Open access is equivalent to closed access with every tier allowed, and
/// the two take the same code path in all operations.
class AccessPolicy {
 public:
  static AccessPolicy open() { return AccessPolicy(true, {}); }
  static AccessPolicy closed(std::set<int> allowed) {
    return AccessPolicy(false, std::move(allowed));
  }

  bool is_open() const { return open_; }
  const std::set<int>& allowed_set() const { return allowed_; }

  bool allows(int tier) const {
    return open_ || allowed_.count(tier) > 0;
  }

  /// Allowed tier indices for a K-tier model, ascending.
  /// Throws EmptyAllowedSet when a closed policy allows nothing, and
  /// std::invalid_argument when a closed policy names a tier outside 1..K.
  std::vector<int> allowed_in(int num_tiers) const;

 private:
  AccessPolicy(bool open, std::set<int> allowed)
      : open_(open), allowed_(std::move(allowed)) {}
  bool open_;
  std::set<int> allowed_;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// One base station in a sampled realization. tier is 1-based; fading is the
/// unit-mean exponential power gain toward the origin.
struct Station {
  Vec2 position;
  int tier = 1;
  double fading = 1.0;
};

/// One sampled network realization inside a disk around the typical user.
struct Deployment {
  std::vector<Station> stations;
  double window_radius = 0.0;
};

/// Monte Carlo point estimate with its standard error and provenance.
struct EstimateWithCI {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Checks every NetworkModel invariant; throws Error identifying the first
/// violated constraint (EmptyTierList, NonPositiveParameter, AlphaOutOfRange).
void validate(const NetworkModel& model);

double db_to_linear(double db);
double linear_to_db(double linear);

}  // namespace hetnet
