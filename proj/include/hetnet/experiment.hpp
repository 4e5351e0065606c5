#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hetnet/analytic.hpp"
#include "hetnet/model.hpp"
#include "hetnet/montecarlo.hpp"
#include "hetnet/quadrature.hpp"

namespace hetnet {

enum class Quantity { kCoverage, kCoverageNoNoise, kLoad, kRate };

/// Noise is either a fixed power or calibrated from a cell-edge SNR target
/// (recomputed per sweep point, since the calibration depends on alpha).
struct NoiseSpec {
  enum class Kind { kWatts, kEdgeSnr };
  Kind kind = Kind::kWatts;
  double watts = 0.0;
  double edge_snr = 1.0;
  double edge_quantile = 0.9;
};

/// What a sweep varies. Values are stored in linear internal units.
struct SweepTarget {
  enum class Kind { kAlpha, kNoise, kPower, kDensity, kThreshold, kAllThresholds };
  Kind kind = Kind::kAllThresholds;
  int tier = 0;  // 1-based, for the per-tier kinds
};

struct SweepSpec {
  SweepTarget target;
  std::vector<double> values;
};

struct RasterSpec {
  int width = 320;
  int height = 320;
  double extent = 0.0;  // meters; <= 0 selects window_radius * sqrt(2)
  bool pixel_csv = false;
};

/// A fully parsed experiment: model in linear SI units, sweep, simulation
/// settings, and requested outputs. Built from the key-value spec format
/// (dB / per-km2 tags are converted at this boundary).
struct ExperimentSpec {
  NetworkModel model;  // model.noise holds the kWatts value; see noise
  NoiseSpec noise;
  AccessPolicy policy = AccessPolicy::open();
  std::optional<SweepSpec> sweep;
  SimulationConfig sim;
  std::vector<Quantity> outputs = {Quantity::kCoverage};
  QuadratureSettings quad;
  RasterSpec raster;
};

/// Parses the spec text; throws Error(ConfigError) with the offending key
/// named in the message.
ExperimentSpec parse_spec_text(const std::string& text);
ExperimentSpec parse_spec_file(const std::string& path);

/// The spec rendered with every value resolved to linear internal units.
/// Re-running this text reproduces the original outputs byte for byte.
std::string effective_spec_text(const ExperimentSpec& spec);

enum class RunMode { kAnalyze, kSimulate, kCompare };

/// Evaluates every sweep point and writes one CSV per requested quantity
/// (coverage.csv, coverage_nonoise.csv, load.csv, rate.csv) plus
/// effective_spec.cfg into out_dir.
void run_experiment(const ExperimentSpec& spec, RunMode mode, const std::string& out_dir);

/// Samples one deployment and writes regions.ppm (and regions.csv when
/// requested) plus effective_spec.cfg into out_dir.
void run_regions(const ExperimentSpec& spec, const std::string& out_dir);

/// Built-in experiment presets; each is a complete spec text.
std::vector<std::string> preset_names();
const std::string& preset_spec(const std::string& name);  // ConfigError if unknown

}  // namespace hetnet
