#include "hetnet/experiment.hpp"

#include <array>
#include <map>
#include <utility>

namespace hetnet {

namespace {

// Reproduction presets. The two-tier coverage sweeps, the noise study, the
// rate sweep and the region maps mirror the published parameter sets; the
// absolute densities are free choices (the no-noise results are
// scale-invariant) and are quoted per km^2 for readability.
const std::array<std::pair<const char*, const char*>, 7> kPresets = {{
    {"fig-pc-2tier",
     "# two-tier coverage sweep, PPP macro tier\n"
     "alpha = 3\n"
     "tiers = 2\n"
     "tier1.power_watts = 100\n"
     "tier1.density_per_km2 = 1\n"
     "tier1.threshold_db = 0\n"
     "tier2.power_watts = 1\n"
     "tier2.density_per_km2 = 2\n"
     "tier2.threshold_db = 1\n"
     "noise_watts = 0\n"
     "access = open\n"
     "sweep.param = tier1.threshold_db\n"
     "sweep.values = -8 -6 -4 -2 0 2 4 6 8 10 12\n"
     "trials = 20000\n"
     "seed = 0\n"
     "tier1_placement = ppp\n"
     "outputs = coverage\n"},
    {"fig-pc-2tier-grid",
     "# two-tier coverage sweep, hexagonal-grid macro tier\n"
     "alpha = 3\n"
     "tiers = 2\n"
     "tier1.power_watts = 100\n"
     "tier1.density_per_km2 = 1\n"
     "tier1.threshold_db = 0\n"
     "tier2.power_watts = 1\n"
     "tier2.density_per_km2 = 2\n"
     "tier2.threshold_db = 1\n"
     "noise_watts = 0\n"
     "access = open\n"
     "sweep.param = tier1.threshold_db\n"
     "sweep.values = -8 -6 -4 -2 0 2 4 6 8 10 12\n"
     "trials = 20000\n"
     "seed = 0\n"
     "tier1_placement = hexgrid\n"
     "outputs = coverage\n"},
    {"fig-pc-2tier-a32",
     "# two-tier coverage sweep at alpha 3.2 with a 30 dB power gap\n"
     "alpha = 3.2\n"
     "tiers = 2\n"
     "tier1.power_watts = 1000\n"
     "tier1.density_per_km2 = 1\n"
     "tier1.threshold_db = 0\n"
     "tier2.power_watts = 1\n"
     "tier2.density_per_km2 = 4\n"
     "tier2.threshold_db = 1\n"
     "noise_watts = 0\n"
     "access = open\n"
     "sweep.param = tier1.threshold_db\n"
     "sweep.values = -8 -6 -4 -2 0 2 4 6 8 10 12\n"
     "trials = 20000\n"
     "seed = 0\n"
     "outputs = coverage\n"},
    {"fig-noise",
     "# thermal-noise sensitivity: edge-SNR calibrated noise vs none\n"
     "tiers = 2\n"
     "alpha = 3\n"
     "tier1.power_watts = 25\n"
     "tier1.density_per_km2 = 1\n"
     "tier1.threshold_db = 5\n"
     "tier2.power_watts = 1\n"
     "tier2.density_per_km2 = 5\n"
     "tier2.threshold_db = 1\n"
     "noise_edge_snr_db = 0\n"
     "noise_edge_quantile = 0.9\n"
     "access = open\n"
     "sweep.param = alpha\n"
     "sweep.values = 2.5 3 3.5 4 4.5 5\n"
     "trials = 20000\n"
     "seed = 0\n"
     "outputs = coverage coverage_nonoise\n"},
    {"fig-rate",
     "# conditional rate with equal thresholds across both tiers\n"
     "alpha = 3\n"
     "tiers = 2\n"
     "tier1.power_watts = 1000\n"
     "tier1.density_per_km2 = 1\n"
     "tier1.threshold_db = 1\n"
     "tier2.power_watts = 1\n"
     "tier2.density_per_km2 = 2\n"
     "tier2.threshold_db = 1\n"
     "noise_watts = 0\n"
     "access = open\n"
     "sweep.param = threshold_db\n"
     "sweep.values = -4 -2 0 1 2 4 6 8 10 12\n"
     "trials = 20000\n"
     "seed = 0\n"
     "outputs = rate\n"},
    {"fig-regions-2tier",
     "# macro+femto region map with a 30 dB power gap\n"
     "alpha = 4\n"
     "tiers = 2\n"
     "tier1.power_watts = 1000\n"
     "tier1.density_per_km2 = 1\n"
     "tier1.threshold_db = 1\n"
     "tier2.power_watts = 1\n"
     "tier2.density_per_km2 = 5\n"
     "tier2.threshold_db = 1\n"
     "noise_watts = 0\n"
     "seed = 0\n"
     "window_radius_m = 3600\n"
     "raster.width = 320\n"
     "raster.height = 320\n"},
    {"fig-regions-3tier",
     "# macro+pico+femto region map\n"
     "alpha = 4\n"
     "tiers = 3\n"
     "tier1.power_watts = 1000\n"
     "tier1.density_per_km2 = 1\n"
     "tier1.threshold_db = 1\n"
     "tier2.power_watts = 10\n"
     "tier2.density_per_km2 = 2\n"
     "tier2.threshold_db = 1\n"
     "tier3.power_watts = 1\n"
     "tier3.density_per_km2 = 8\n"
     "tier3.threshold_db = 1\n"
     "noise_watts = 0\n"
     "seed = 0\n"
     "window_radius_m = 3000\n"
     "raster.width = 320\n"
     "raster.height = 320\n"},
}};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  names.reserve(kPresets.size());
  for (const auto& [name, text] : kPresets) names.emplace_back(name);
  return names;
}

const std::string& preset_spec(const std::string& name) {
  static const std::map<std::string, std::string> by_name = [] {
    std::map<std::string, std::string> m;
    for (const auto& [n, text] : kPresets) m.emplace(n, text);
    return m;
  }();
  const auto it = by_name.find(name);
  if (it == by_name.end())
    raise(ErrorCode::ConfigError, "unknown preset '" + name + "' (see: hcn presets list)");
  return it->second;
}

}  // namespace hetnet
