#pragma once

#include <vector>

#include "hetnet/model.hpp"
#include "hetnet/quadrature.hpp"

namespace hetnet {

/// Per-tier fraction of covered users served by each tier. Entry j (0-based
/// storage for 1-based tier j+1) is 0 for tiers outside the allowed set; the
/// entries sum to 1 whenever coverage is positive.
struct LoadVector {
  std::vector<double> fractions;
};

/// The interference constant C(alpha) = 2 pi^2 csc(2 pi / alpha) / alpha.
/// Diverges as alpha -> 2+; throws AlphaOutOfRange for alpha <= 2.
double c_alpha(double alpha);

/// Laplace transform of the aggregate interference at the origin,
///   L_I(s) = exp(-s^{2/alpha} C(alpha) sum_i lambda_i P_i^{2/alpha}).
double laplace_interference(double s, const NetworkModel& model);

/// sigma^2 calibrated from a cell-edge SNR target: the edge distance is the
/// edge_quantile of the nearest-tier-1-BS distance, and
/// sigma^2 = power * d_edge^{-alpha} / edge_snr.
double noise_from_edge_snr(double tier1_power, double tier1_density,
                           double alpha, double edge_snr, double edge_quantile);

// ---------------------------------------------------------------------------
// Expression evaluators.
//
// These evaluate the coverage / load / rate / CCDF expressions exactly as
// written, for any positive thresholds. The expressions are exact for
// thresholds > 1 and remain a tight upper bound down to about -4 dB (the
// sweep harness plots them across that range); the gated entry points below
// add the threshold check and are the library's primary API.
// ---------------------------------------------------------------------------

double coverage_expression(const NetworkModel& model, const AccessPolicy& policy,
                           const QuadratureSettings& quad);
double coverage_nonoise_expression(const NetworkModel& model, const AccessPolicy& policy);
LoadVector load_expression(const NetworkModel& model, const AccessPolicy& policy,
                           const QuadratureSettings& quad);
double max_sir_ccdf_expression(double t, const NetworkModel& model, const AccessPolicy& policy);
double rate_expression(const NetworkModel& model, const AccessPolicy& policy,
                       const QuadratureSettings& quad);

// ---------------------------------------------------------------------------
// Gated operations. Each validates the model and requires threshold > 1 for
// every tier it sums over (ThresholdTooLow otherwise).
// ---------------------------------------------------------------------------

/// Open-access coverage probability: sum over tiers of the planar integral
/// reduced to radial form and evaluated by adaptive quadrature.
double coverage_open(const NetworkModel& model, const QuadratureSettings& quad);

/// Interference-limited closed form: (pi / C(alpha)) *
/// sum_i lambda_i P_i^{2/a} beta_i^{-2/a} / sum_i lambda_i P_i^{2/a}.
double coverage_open_nonoise(const NetworkModel& model);

/// Closed-access coverage: outer sum restricted to allowed tiers, every tier
/// still interferes.
double coverage_closed(const NetworkModel& model, const AccessPolicy& policy,
                       const QuadratureSettings& quad);

/// Average fraction of covered users served by each tier, open access.
LoadVector load_open(const NetworkModel& model, const QuadratureSettings& quad);

/// Closed-access load; exactly 0 for tiers outside the allowed set.
LoadVector load_closed(const NetworkModel& model, const AccessPolicy& policy,
                       const QuadratureSettings& quad);

/// Conditional CCDF of the max SIR given coverage (interference-limited).
/// Returns 1 for t <= min allowed threshold.
double max_sir_ccdf(double t, const NetworkModel& model, const AccessPolicy& policy);

/// Average rate in nats of a covered user, open access, interference-limited.
double rate_open(const NetworkModel& model, const QuadratureSettings& quad);

/// Closed-access variant of rate_open.
double rate_closed(const NetworkModel& model, const AccessPolicy& policy,
                   const QuadratureSettings& quad);

}  // namespace hetnet
