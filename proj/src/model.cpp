#include "hetnet/model.hpp"

#include <cmath>

namespace hetnet {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::EmptyTierList: return "EmptyTierList";
    case ErrorCode::ThresholdTooLow: return "ThresholdTooLow";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::EmptyAllowedSet: return "EmptyAllowedSet";
    case ErrorCode::StationAtOrigin: return "StationAtOrigin";
    case ErrorCode::NoCoveredTrials: return "NoCoveredTrials";
    case ErrorCode::InvalidQuantile: return "InvalidQuantile";
    case ErrorCode::EmptyDeployment: return "EmptyDeployment";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

void raise(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(error_code_name(code)) + ": " + what);
}

std::vector<int> AccessPolicy::allowed_in(int num_tiers) const {
  std::vector<int> out;
  if (open_) {
    out.reserve(num_tiers);
    for (int i = 1; i <= num_tiers; ++i) out.push_back(i);
    return out;
  }
  for (int tier : allowed_) {
    if (tier < 1 || tier > num_tiers) {
      throw std::invalid_argument("access policy names tier " +
                                  std::to_string(tier) + " outside 1.." +
                                  std::to_string(num_tiers));
    }
    out.push_back(tier);
  }
  if (out.empty()) raise(ErrorCode::EmptyAllowedSet, "closed access policy allows no tier");
  return out;
}

void validate(const NetworkModel& model) {
  if (model.tiers.empty()) raise(ErrorCode::EmptyTierList, "model has no tiers");
  for (std::size_t i = 0; i < model.tiers.size(); ++i) {
    const TierParams& t = model.tiers[i];
    const std::string tier = "tier " + std::to_string(i + 1);
    if (!(t.power > 0.0) || !std::isfinite(t.power))
      raise(ErrorCode::NonPositiveParameter, tier + " power must be > 0");
    if (!(t.density > 0.0) || !std::isfinite(t.density))
      raise(ErrorCode::NonPositiveParameter, tier + " density must be > 0");
    if (!(t.threshold > 0.0) || !std::isfinite(t.threshold))
      raise(ErrorCode::NonPositiveParameter, tier + " threshold must be > 0");
  }
  if (!(model.alpha > 2.0) || !std::isfinite(model.alpha))
    raise(ErrorCode::AlphaOutOfRange, "alpha must be > 2, got " + std::to_string(model.alpha));
  if (!(model.noise >= 0.0) || !std::isfinite(model.noise))
    raise(ErrorCode::NonPositiveParameter, "noise must be >= 0");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace hetnet
