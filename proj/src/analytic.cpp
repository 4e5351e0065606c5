#include "hetnet/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hetnet {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_thresholds_above_one(const NetworkModel& model, const std::vector<int>& tiers) {
  for (int tier : tiers) {
    const double beta = model.tiers[tier - 1].threshold;
    if (!(beta > 1.0)) {
      raise(ErrorCode::ThresholdTooLow,
            "tier " + std::to_string(tier) + " threshold " + std::to_string(beta) +
                " must be > 1 for the analytic expressions");
    }
  }
}

void require_no_noise(const NetworkModel& model, const char* op) {
  if (model.noise != 0.0)
    throw std::invalid_argument(std::string(op) + " is defined for the interference-limited model (noise = 0)");
}

double sum_weighted_density(const NetworkModel& model) {
  const double e = 2.0 / model.alpha;
  double s = 0.0;
  for (const TierParams& t : model.tiers) s += t.density * std::pow(t.power, e);
  return s;
}

// Radial reduction of the per-tier planar integral
//   integral over R^2 of exp(-a |x|^2 - b |x|^alpha) dx
//     = pi * integral_0^inf exp(-a u - b u^{alpha/2}) du        (u = r^2)
//     = (pi / a) * integral_0^inf exp(-t - kappa t^{alpha/2}) dt (t = a u)
// with kappa = b / a^{alpha/2}. The integrand is 1 at t = 0 and decreasing;
// it is truncated where it falls below abs_tol and the exponential bound on
// the remainder (exact when b = 0) is added back.
double planar_integral(double a, double b, double alpha, const QuadratureSettings& quad) {
  const double kappa = b / std::pow(a, alpha / 2.0);
  const double floor_eps = std::max(quad.abs_tol, 1e-300);
  const double log_cut = -std::log(floor_eps);

  double t_star = log_cut;
  if (kappa > 0.0) t_star = std::min(t_star, std::pow(log_cut / kappa, 2.0 / alpha));

  const double half_alpha = alpha / 2.0;
  const auto integrand = [kappa, half_alpha](double t) {
    return std::exp(-t - kappa * std::pow(t, half_alpha));
  };
  const double body = integrate(integrand, 0.0, t_star, quad);
  const double tail = std::exp(-t_star - kappa * std::pow(t_star, half_alpha));
  return kPi * (body + tail) / a;
}

// Per-tier radial integrals (the delta_j of the load expressions) for the
// listed tiers, using the shared interference weight sum over all K tiers.
std::vector<double> tier_integrals(const NetworkModel& model, const std::vector<int>& tiers,
                                   const QuadratureSettings& quad) {
  const double e = 2.0 / model.alpha;
  const double weighted = sum_weighted_density(model);
  const double c = c_alpha(model.alpha);

  std::vector<double> out;
  out.reserve(tiers.size());
  for (int tier : tiers) {
    const TierParams& t = model.tiers[tier - 1];
    const double a = c * std::pow(t.threshold / t.power, e) * weighted;
    const double b = t.threshold * model.noise / t.power;
    out.push_back(planar_integral(a, b, model.alpha, quad));
  }
  return out;
}

// A(alpha, beta_i, beta_min) = integral_{beta_min}^inf max(beta_i, x)^{-2/a} / (1+x) dx,
// split at beta_i; the flat head integrates to a log difference and the tail
// is compactified by x = v^{-alpha/2}, which gives the smooth finite form
//   (alpha/2) * integral_0^{beta_i^{-2/alpha}} dv / (1 + v^{alpha/2}).
double rate_tail_integral(double alpha, double beta_i, double beta_min,
                          const QuadratureSettings& quad) {
  const double e = 2.0 / alpha;
  const double head = std::pow(beta_i, -e) * (std::log1p(beta_i) - std::log1p(beta_min));
  const double half_alpha = alpha / 2.0;
  const auto integrand = [half_alpha](double v) { return 1.0 / (1.0 + std::pow(v, half_alpha)); };
  const double tail = (alpha / 2.0) * integrate(integrand, 0.0, std::pow(beta_i, -e), quad);
  return head + tail;
}

}  // namespace

double c_alpha(double alpha) {
  if (!(alpha > 2.0))
    raise(ErrorCode::AlphaOutOfRange, "C(alpha) requires alpha > 2, got " + std::to_string(alpha));
  return 2.0 * kPi * kPi / (alpha * std::sin(2.0 * kPi / alpha));
}

double laplace_interference(double s, const NetworkModel& model) {
  validate(model);
  if (!(s >= 0.0)) throw std::invalid_argument("laplace_interference requires s >= 0");
  const double exponent = std::pow(s, 2.0 / model.alpha) * c_alpha(model.alpha) * sum_weighted_density(model);
  return std::exp(-exponent);
}

double noise_from_edge_snr(double tier1_power, double tier1_density,
                           double alpha, double edge_snr, double edge_quantile) {
  if (!(edge_quantile > 0.0) || !(edge_quantile < 1.0))
    raise(ErrorCode::InvalidQuantile,
          "edge quantile must lie in (0,1), got " + std::to_string(edge_quantile));
  if (!(tier1_power > 0.0) || !(tier1_density > 0.0) || !(edge_snr > 0.0))
    raise(ErrorCode::NonPositiveParameter, "edge SNR calibration inputs must be > 0");
  if (!(alpha > 2.0))
    raise(ErrorCode::AlphaOutOfRange, "alpha must be > 2");
  const double d_edge = std::sqrt(-std::log1p(-edge_quantile) / (kPi * tier1_density));
  return tier1_power * std::pow(d_edge, -alpha) / edge_snr;
}

double coverage_expression(const NetworkModel& model, const AccessPolicy& policy,
                           const QuadratureSettings& quad) {
  validate(model);
  const std::vector<int> allowed = policy.allowed_in(model.num_tiers());
  const std::vector<double> integrals = tier_integrals(model, allowed, quad);
  double total = 0.0;
  for (std::size_t k = 0; k < allowed.size(); ++k)
    total += model.tiers[allowed[k] - 1].density * integrals[k];
  return total;
}

double coverage_nonoise_expression(const NetworkModel& model, const AccessPolicy& policy) {
  validate(model);
  const std::vector<int> allowed = policy.allowed_in(model.num_tiers());
  const double e = 2.0 / model.alpha;
  double num = 0.0;
  for (int tier : allowed) {
    const TierParams& t = model.tiers[tier - 1];
    num += t.density * std::pow(t.power, e) * std::pow(t.threshold, -e);
  }
  return kPi / c_alpha(model.alpha) * num / sum_weighted_density(model);
}

LoadVector load_expression(const NetworkModel& model, const AccessPolicy& policy,
                           const QuadratureSettings& quad) {
  validate(model);
  const std::vector<int> allowed = policy.allowed_in(model.num_tiers());
  const std::vector<double> integrals = tier_integrals(model, allowed, quad);

  double coverage = 0.0;
  for (std::size_t k = 0; k < allowed.size(); ++k)
    coverage += model.tiers[allowed[k] - 1].density * integrals[k];

  LoadVector load;
  load.fractions.assign(model.tiers.size(), 0.0);
  for (std::size_t k = 0; k < allowed.size(); ++k)
    load.fractions[allowed[k] - 1] = model.tiers[allowed[k] - 1].density * integrals[k] / coverage;
  return load;
}

double max_sir_ccdf_expression(double t, const NetworkModel& model, const AccessPolicy& policy) {
  validate(model);
  require_no_noise(model, "max_sir_ccdf");
  const std::vector<int> allowed = policy.allowed_in(model.num_tiers());
  const double e = 2.0 / model.alpha;

  double beta_min = std::numeric_limits<double>::infinity();
  for (int tier : allowed) beta_min = std::min(beta_min, model.tiers[tier - 1].threshold);
  if (t <= beta_min) return 1.0;

  double num = 0.0, denom = 0.0;
  for (int tier : allowed) {
    const TierParams& p = model.tiers[tier - 1];
    const double w = p.density * std::pow(p.power, e);
    num += w * std::pow(std::max(p.threshold, t), -e);
    denom += w * std::pow(p.threshold, -e);
  }
  return num / denom;
}

double rate_expression(const NetworkModel& model, const AccessPolicy& policy,
                       const QuadratureSettings& quad) {
  validate(model);
  require_no_noise(model, "rate");
  const std::vector<int> allowed = policy.allowed_in(model.num_tiers());
  const double e = 2.0 / model.alpha;

  double beta_min = std::numeric_limits<double>::infinity();
  for (int tier : allowed) beta_min = std::min(beta_min, model.tiers[tier - 1].threshold);

  double num = 0.0, denom = 0.0;
  for (int tier : allowed) {
    const TierParams& p = model.tiers[tier - 1];
    const double w = p.density * std::pow(p.power, e);
    num += w * rate_tail_integral(model.alpha, p.threshold, beta_min, quad);
    denom += w * std::pow(p.threshold, -e);
  }
  return std::log1p(beta_min) + num / denom;
}

double coverage_open(const NetworkModel& model, const QuadratureSettings& quad) {
  return coverage_closed(model, AccessPolicy::open(), quad);
}

double coverage_open_nonoise(const NetworkModel& model) {
  validate(model);
  const AccessPolicy open = AccessPolicy::open();
  require_thresholds_above_one(model, open.allowed_in(model.num_tiers()));
  return coverage_nonoise_expression(model, open);
}

double coverage_closed(const NetworkModel& model, const AccessPolicy& policy,
                       const QuadratureSettings& quad) {
  validate(model);
  require_thresholds_above_one(model, policy.allowed_in(model.num_tiers()));
  return coverage_expression(model, policy, quad);
}

LoadVector load_open(const NetworkModel& model, const QuadratureSettings& quad) {
  return load_closed(model, AccessPolicy::open(), quad);
}

LoadVector load_closed(const NetworkModel& model, const AccessPolicy& policy,
                       const QuadratureSettings& quad) {
  validate(model);
  require_thresholds_above_one(model, policy.allowed_in(model.num_tiers()));
  return load_expression(model, policy, quad);
}

double max_sir_ccdf(double t, const NetworkModel& model, const AccessPolicy& policy) {
  validate(model);
  require_thresholds_above_one(model, policy.allowed_in(model.num_tiers()));
  return max_sir_ccdf_expression(t, model, policy);
}

double rate_open(const NetworkModel& model, const QuadratureSettings& quad) {
  return rate_closed(model, AccessPolicy::open(), quad);
}

double rate_closed(const NetworkModel& model, const AccessPolicy& policy,
                   const QuadratureSettings& quad) {
  validate(model);
  require_thresholds_above_one(model, policy.allowed_in(model.num_tiers()));
  return rate_expression(model, policy, quad);
}

}  // namespace hetnet
