#include "hetnet/experiment.hpp"

#include "hetnet/regions.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hetnet {

namespace {

[[noreturn]] void config_error(const std::string& what) {
  raise(ErrorCode::ConfigError, what);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> out;
  std::string token;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!token.empty()) out.push_back(token);
      token.clear();
    } else {
      token.push_back(c);
    }
  }
  if (!token.empty()) out.push_back(token);
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    if (!std::isfinite(v)) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    config_error("key '" + key + "': expected a finite number, got '" + value + "'");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    config_error("key '" + key + "': expected an integer, got '" + value + "'");
  }
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Ordered key-value view of the spec text. Duplicate keys are rejected so a
// spec cannot silently override itself.
class KeyValues {
 public:
  explicit KeyValues(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) config_error("line '" + line + "' is not a 'key = value' pair");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) config_error("line '" + line + "' has an empty key");
      if (values_.count(key)) config_error("duplicate key '" + key + "'");
      values_[key] = value;
      order_.push_back(key);
    }
  }

  std::optional<std::string> take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    std::string v = it->second;
    values_.erase(it);
    return v;
  }

  std::string require(const std::string& key) {
    auto v = take(key);
    if (!v) config_error("missing required key '" + key + "'");
    return *v;
  }

  void finish() const {
    for (const std::string& key : order_)
      if (values_.count(key)) config_error("unknown key '" + key + "'");
  }

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::string> order_;
};

// --- sweep parameter paths ---------------------------------------------

bool db_meaningful(const SweepTarget& t) {
  switch (t.kind) {
    case SweepTarget::Kind::kNoise:
    case SweepTarget::Kind::kPower:
    case SweepTarget::Kind::kThreshold:
    case SweepTarget::Kind::kAllThresholds:
      return true;
    default:
      return false;
  }
}

std::string canonical_path(const SweepTarget& t) {
  const std::string tier = "tier" + std::to_string(t.tier);
  switch (t.kind) {
    case SweepTarget::Kind::kAlpha: return "alpha";
    case SweepTarget::Kind::kNoise: return "noise_watts";
    case SweepTarget::Kind::kPower: return tier + ".power_watts";
    case SweepTarget::Kind::kDensity: return tier + ".density_per_m2";
    case SweepTarget::Kind::kThreshold: return tier + ".threshold";
    case SweepTarget::Kind::kAllThresholds: return "threshold";
  }
  return "";
}

// Parses a sweep path; *to_linear gets the unit conversion for the values.
SweepTarget parse_sweep_path(const std::string& path, double (**to_linear)(double)) {
  static const auto identity = +[](double v) { return v; };
  static const auto from_db = +[](double v) { return db_to_linear(v); };
  static const auto from_km2 = +[](double v) { return v * 1e-6; };
  *to_linear = identity;

  SweepTarget t;
  if (path == "alpha") { t.kind = SweepTarget::Kind::kAlpha; return t; }
  if (path == "noise_watts") { t.kind = SweepTarget::Kind::kNoise; return t; }
  if (path == "threshold") { t.kind = SweepTarget::Kind::kAllThresholds; return t; }
  if (path == "threshold_db") { t.kind = SweepTarget::Kind::kAllThresholds; *to_linear = from_db; return t; }

  if (path.rfind("tier", 0) == 0) {
    const auto dot = path.find('.');
    if (dot != std::string::npos && dot > 4) {
      const std::string num = path.substr(4, dot - 4);
      const std::string field = path.substr(dot + 1);
      char* end = nullptr;
      const long tier = std::strtol(num.c_str(), &end, 10);
      if (end == num.c_str() + num.size() && tier >= 1) {
        t.tier = static_cast<int>(tier);
        if (field == "power_watts") { t.kind = SweepTarget::Kind::kPower; return t; }
        if (field == "power_db") { t.kind = SweepTarget::Kind::kPower; *to_linear = from_db; return t; }
        if (field == "density_per_m2") { t.kind = SweepTarget::Kind::kDensity; return t; }
        if (field == "density_per_km2") { t.kind = SweepTarget::Kind::kDensity; *to_linear = from_km2; return t; }
        if (field == "threshold") { t.kind = SweepTarget::Kind::kThreshold; return t; }
        if (field == "threshold_db") { t.kind = SweepTarget::Kind::kThreshold; *to_linear = from_db; return t; }
      }
    }
  }
  config_error("key 'sweep.param': unknown parameter path '" + path + "'");
}

NetworkModel apply_sweep(const NetworkModel& base, const SweepTarget& target, double value) {
  NetworkModel m = base;
  switch (target.kind) {
    case SweepTarget::Kind::kAlpha: m.alpha = value; break;
    case SweepTarget::Kind::kNoise: m.noise = value; break;
    case SweepTarget::Kind::kPower: m.tiers[target.tier - 1].power = value; break;
    case SweepTarget::Kind::kDensity: m.tiers[target.tier - 1].density = value; break;
    case SweepTarget::Kind::kThreshold: m.tiers[target.tier - 1].threshold = value; break;
    case SweepTarget::Kind::kAllThresholds:
      for (TierParams& t : m.tiers) t.threshold = value;
      break;
  }
  return m;
}

double resolve_noise(const NoiseSpec& noise, const NetworkModel& model) {
  if (noise.kind == NoiseSpec::Kind::kWatts) return noise.watts;
  return noise_from_edge_snr(model.tiers[0].power, model.tiers[0].density, model.alpha,
                             noise.edge_snr, noise.edge_quantile);
}

const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::kCoverage: return "coverage";
    case Quantity::kCoverageNoNoise: return "coverage_nonoise";
    case Quantity::kLoad: return "load";
    case Quantity::kRate: return "rate";
  }
  return "";
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

ExperimentSpec parse_spec_text(const std::string& text) {
  KeyValues kv(text);
  ExperimentSpec spec;

  spec.model.alpha = parse_double("alpha", kv.require("alpha"));
  if (!(spec.model.alpha > 2.0)) config_error("key 'alpha': must be > 2");

  const std::int64_t tiers = parse_int("tiers", kv.require("tiers"));
  if (tiers < 1 || tiers > 64) config_error("key 'tiers': must be between 1 and 64");

  for (int n = 1; n <= tiers; ++n) {
    const std::string prefix = "tier" + std::to_string(n) + ".";
    TierParams t;

    const auto power_w = kv.take(prefix + "power_watts");
    const auto power_db = kv.take(prefix + "power_db");
    if (power_w && power_db) config_error("key '" + prefix + "power_db': conflicts with " + prefix + "power_watts");
    if (!power_w && !power_db) config_error("missing required key '" + prefix + "power_watts'");
    t.power = power_w ? parse_double(prefix + "power_watts", *power_w)
                      : db_to_linear(parse_double(prefix + "power_db", *power_db));

    const auto dens_km = kv.take(prefix + "density_per_km2");
    const auto dens_m = kv.take(prefix + "density_per_m2");
    if (dens_km && dens_m) config_error("key '" + prefix + "density_per_m2': conflicts with " + prefix + "density_per_km2");
    if (!dens_km && !dens_m) config_error("missing required key '" + prefix + "density_per_km2'");
    t.density = dens_m ? parse_double(prefix + "density_per_m2", *dens_m)
                       : parse_double(prefix + "density_per_km2", *dens_km) * 1e-6;

    const auto thr_db = kv.take(prefix + "threshold_db");
    const auto thr = kv.take(prefix + "threshold");
    if (thr_db && thr) config_error("key '" + prefix + "threshold': conflicts with " + prefix + "threshold_db");
    if (!thr_db && !thr) config_error("missing required key '" + prefix + "threshold_db'");
    t.threshold = thr ? parse_double(prefix + "threshold", *thr)
                      : db_to_linear(parse_double(prefix + "threshold_db", *thr_db));

    if (!(t.power > 0.0)) config_error("key '" + prefix + "power_watts': must be > 0");
    if (!(t.density > 0.0)) config_error("key '" + prefix + "density_per_km2': must be > 0");
    if (!(t.threshold > 0.0)) config_error("key '" + prefix + "threshold': must be > 0");
    spec.model.tiers.push_back(t);
  }

  // noise: a fixed power or an edge-SNR calibration
  const auto noise_w = kv.take("noise_watts");
  const auto noise_snr_db = kv.take("noise_edge_snr_db");
  const auto noise_snr = kv.take("noise_edge_snr");
  if ((noise_w && (noise_snr_db || noise_snr)) || (noise_snr_db && noise_snr))
    config_error("key 'noise_watts': conflicting noise specifications");
  if (noise_snr_db || noise_snr) {
    spec.noise.kind = NoiseSpec::Kind::kEdgeSnr;
    spec.noise.edge_snr = noise_snr ? parse_double("noise_edge_snr", *noise_snr)
                                    : db_to_linear(parse_double("noise_edge_snr_db", *noise_snr_db));
    if (!(spec.noise.edge_snr > 0.0)) config_error("key 'noise_edge_snr': must be > 0");
    if (const auto q = kv.take("noise_edge_quantile")) {
      spec.noise.edge_quantile = parse_double("noise_edge_quantile", *q);
      if (!(spec.noise.edge_quantile > 0.0 && spec.noise.edge_quantile < 1.0))
        config_error("key 'noise_edge_quantile': must lie in (0,1)");
    }
  } else if (noise_w) {
    spec.noise.watts = parse_double("noise_watts", *noise_w);
    if (spec.noise.watts < 0.0) config_error("key 'noise_watts': must be >= 0");
  }
  spec.model.noise = spec.noise.kind == NoiseSpec::Kind::kWatts ? spec.noise.watts : 0.0;

  if (const auto access = kv.take("access")) {
    const std::vector<std::string> tokens = tokenize(*access);
    if (tokens.empty()) config_error("key 'access': empty value");
    if (tokens[0] == "open") {
      if (tokens.size() != 1) config_error("key 'access': open takes no tier list");
      spec.policy = AccessPolicy::open();
    } else if (tokens[0] == "closed") {
      if (tokens.size() < 2) config_error("key 'access': closed needs a tier list");
      std::set<int> allowed;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        const std::int64_t tier = parse_int("access", tokens[i]);
        if (tier < 1 || tier > tiers)
          config_error("key 'access': tier " + tokens[i] + " is outside 1.." + std::to_string(tiers));
        allowed.insert(static_cast<int>(tier));
      }
      spec.policy = AccessPolicy::closed(allowed);
    } else {
      config_error("key 'access': expected 'open' or 'closed <tiers>', got '" + tokens[0] + "'");
    }
  }

  const auto sweep_param = kv.take("sweep.param");
  const auto sweep_values = kv.take("sweep.values");
  if (sweep_param.has_value() != sweep_values.has_value())
    config_error("keys 'sweep.param' and 'sweep.values' must be given together");
  if (sweep_param) {
    double (*to_linear)(double) = nullptr;
    SweepSpec sweep;
    sweep.target = parse_sweep_path(*sweep_param, &to_linear);
    if (sweep.target.tier > tiers)
      config_error("key 'sweep.param': tier " + std::to_string(sweep.target.tier) +
                   " is outside 1.." + std::to_string(tiers));
    for (const std::string& token : tokenize(*sweep_values))
      sweep.values.push_back(to_linear(parse_double("sweep.values", token)));
    if (sweep.values.empty()) config_error("key 'sweep.values': empty list");
    for (double v : sweep.values) {
      if (sweep.target.kind == SweepTarget::Kind::kAlpha && !(v > 2.0))
        config_error("key 'sweep.values': alpha values must be > 2");
      if (sweep.target.kind == SweepTarget::Kind::kNoise && v < 0.0)
        config_error("key 'sweep.values': noise must be >= 0");
      if (sweep.target.kind != SweepTarget::Kind::kAlpha &&
          sweep.target.kind != SweepTarget::Kind::kNoise && !(v > 0.0))
        config_error("key 'sweep.values': values must be > 0");
    }
    spec.sweep = sweep;
  }

  if (const auto v = kv.take("trials")) {
    spec.sim.trials = parse_int("trials", *v);
    if (spec.sim.trials < 1) config_error("key 'trials': must be >= 1");
  }
  if (const auto v = kv.take("seed")) {
    spec.sim.seed = static_cast<std::uint64_t>(parse_int("seed", *v));
  }
  if (const auto v = kv.take("window_radius_m")) {
    if (*v == "auto") {
      spec.sim.window_radius = 0.0;
    } else {
      spec.sim.window_radius = parse_double("window_radius_m", *v);
      if (!(spec.sim.window_radius > 0.0)) config_error("key 'window_radius_m': must be > 0 or auto");
    }
  }
  if (const auto v = kv.take("tier1_placement")) {
    if (*v == "ppp") spec.sim.tier1_placement = Tier1Placement::kPpp;
    else if (*v == "hexgrid") spec.sim.tier1_placement = Tier1Placement::kHexGrid;
    else config_error("key 'tier1_placement': expected ppp or hexgrid, got '" + *v + "'");
  }
  if (const auto v = kv.take("exec")) {
    if (*v == "serial") spec.sim.mode = ExecutionMode::kSerial;
    else if (*v == "parallel") spec.sim.mode = ExecutionMode::kParallel;
    else config_error("key 'exec': expected serial or parallel, got '" + *v + "'");
  }

  const auto override_db = kv.take("thresholds_override_db");
  const auto override_lin = kv.take("thresholds_override");
  if (override_db && override_lin)
    config_error("key 'thresholds_override': conflicts with thresholds_override_db");
  if (override_db || override_lin) {
    const std::string key = override_db ? "thresholds_override_db" : "thresholds_override";
    for (const std::string& token : tokenize(override_db ? *override_db : *override_lin)) {
      double v = parse_double(key, token);
      if (override_db) v = db_to_linear(v);
      if (!(v > 0.0)) config_error("key '" + key + "': thresholds must be > 0");
      spec.sim.thresholds_override.push_back(v);
    }
    if (spec.sim.thresholds_override.size() != spec.model.tiers.size())
      config_error("key '" + key + "': needs exactly one value per tier");
  }

  if (const auto v = kv.take("outputs")) {
    spec.outputs.clear();
    for (const std::string& token : tokenize(*v)) {
      if (token == "coverage") spec.outputs.push_back(Quantity::kCoverage);
      else if (token == "coverage_nonoise") spec.outputs.push_back(Quantity::kCoverageNoNoise);
      else if (token == "load") spec.outputs.push_back(Quantity::kLoad);
      else if (token == "rate") spec.outputs.push_back(Quantity::kRate);
      else config_error("key 'outputs': unknown quantity '" + token + "'");
    }
    if (spec.outputs.empty()) config_error("key 'outputs': empty list");
  }

  if (const auto v = kv.take("quad.rel_tol")) {
    spec.quad.rel_tol = parse_double("quad.rel_tol", *v);
    if (!(spec.quad.rel_tol > 0.0)) config_error("key 'quad.rel_tol': must be > 0");
  }
  if (const auto v = kv.take("quad.abs_tol")) {
    spec.quad.abs_tol = parse_double("quad.abs_tol", *v);
    if (spec.quad.abs_tol < 0.0) config_error("key 'quad.abs_tol': must be >= 0");
  }
  if (const auto v = kv.take("quad.max_subdivisions")) {
    spec.quad.max_subdivisions = static_cast<int>(parse_int("quad.max_subdivisions", *v));
    if (spec.quad.max_subdivisions < 1) config_error("key 'quad.max_subdivisions': must be >= 1");
  }

  if (const auto v = kv.take("raster.width")) {
    spec.raster.width = static_cast<int>(parse_int("raster.width", *v));
    if (spec.raster.width < 1) config_error("key 'raster.width': must be >= 1");
  }
  if (const auto v = kv.take("raster.height")) {
    spec.raster.height = static_cast<int>(parse_int("raster.height", *v));
    if (spec.raster.height < 1) config_error("key 'raster.height': must be >= 1");
  }
  if (const auto v = kv.take("raster.extent_m")) {
    if (*v == "auto") {
      spec.raster.extent = 0.0;
    } else {
      spec.raster.extent = parse_double("raster.extent_m", *v);
      if (!(spec.raster.extent > 0.0)) config_error("key 'raster.extent_m': must be > 0 or auto");
    }
  }
  if (const auto v = kv.take("raster.pixel_csv")) {
    if (*v == "true") spec.raster.pixel_csv = true;
    else if (*v == "false") spec.raster.pixel_csv = false;
    else config_error("key 'raster.pixel_csv': expected true or false");
  }

  kv.finish();

  try {
    validate(spec.model);
  } catch (const Error& e) {
    config_error(std::string("model validation failed: ") + e.what());
  }
  return spec;
}

ExperimentSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot open spec file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spec_text(buffer.str());
}

std::string effective_spec_text(const ExperimentSpec& spec) {
  std::ostringstream out;
  out << "# effective spec: all values resolved to linear internal units\n";
  out << "alpha = " << fmt_g(spec.model.alpha) << "\n";
  out << "tiers = " << spec.model.tiers.size() << "\n";
  for (std::size_t i = 0; i < spec.model.tiers.size(); ++i) {
    const std::string prefix = "tier" + std::to_string(i + 1) + ".";
    out << prefix << "power_watts = " << fmt_g(spec.model.tiers[i].power) << "\n";
    out << prefix << "density_per_m2 = " << fmt_g(spec.model.tiers[i].density) << "\n";
    out << prefix << "threshold = " << fmt_g(spec.model.tiers[i].threshold) << "\n";
  }
  if (spec.noise.kind == NoiseSpec::Kind::kWatts) {
    out << "noise_watts = " << fmt_g(spec.noise.watts) << "\n";
  } else {
    out << "noise_edge_snr = " << fmt_g(spec.noise.edge_snr) << "\n";
    out << "noise_edge_quantile = " << fmt_g(spec.noise.edge_quantile) << "\n";
  }
  if (spec.policy.is_open()) {
    out << "access = open\n";
  } else {
    out << "access = closed";
    for (int tier : spec.policy.allowed_set()) out << " " << tier;
    out << "\n";
  }
  if (spec.sweep) {
    out << "sweep.param = " << canonical_path(spec.sweep->target) << "\n";
    out << "sweep.values =";
    for (double v : spec.sweep->values) out << " " << fmt_g(v);
    out << "\n";
  }
  out << "trials = " << spec.sim.trials << "\n";
  out << "seed = " << spec.sim.seed << "\n";
  if (spec.sim.window_radius > 0.0)
    out << "window_radius_m = " << fmt_g(spec.sim.window_radius) << "\n";
  else
    out << "window_radius_m = auto\n";
  out << "tier1_placement = "
      << (spec.sim.tier1_placement == Tier1Placement::kHexGrid ? "hexgrid" : "ppp") << "\n";
  out << "exec = " << (spec.sim.mode == ExecutionMode::kSerial ? "serial" : "parallel") << "\n";
  if (!spec.sim.thresholds_override.empty()) {
    out << "thresholds_override =";
    for (double v : spec.sim.thresholds_override) out << " " << fmt_g(v);
    out << "\n";
  }
  out << "outputs =";
  for (Quantity q : spec.outputs) out << " " << quantity_name(q);
  out << "\n";
  out << "quad.rel_tol = " << fmt_g(spec.quad.rel_tol) << "\n";
  out << "quad.abs_tol = " << fmt_g(spec.quad.abs_tol) << "\n";
  out << "quad.max_subdivisions = " << spec.quad.max_subdivisions << "\n";
  out << "raster.width = " << spec.raster.width << "\n";
  out << "raster.height = " << spec.raster.height << "\n";
  if (spec.raster.extent > 0.0)
    out << "raster.extent_m = " << fmt_g(spec.raster.extent) << "\n";
  else
    out << "raster.extent_m = auto\n";
  out << "raster.pixel_csv = " << (spec.raster.pixel_csv ? "true" : "false") << "\n";
  return out.str();
}

namespace {

struct CsvTable {
  std::string text;
};

bool wants(const ExperimentSpec& spec, Quantity q) {
  for (Quantity o : spec.outputs)
    if (o == q) return true;
  return false;
}

// Sweep value columns: "<db>,<linear>"; the dB cell is blank for parameters
// without a decibel reading (alpha, densities).
std::string sweep_columns(const ExperimentSpec& spec, double linear_value) {
  std::string db_cell;
  if (!spec.sweep || db_meaningful(spec.sweep->target))
    db_cell = fmt_g(linear_to_db(linear_value));
  return db_cell + "," + fmt_g(linear_value);
}

}  // namespace

void run_experiment(const ExperimentSpec& spec, RunMode mode, const std::string& out_dir) {
  if (!spec.sweep) config_error("missing required key 'sweep.param' (nothing to evaluate)");
  const bool with_analytic = mode != RunMode::kSimulate;
  const bool with_sim = mode != RunMode::kAnalyze;
  const int num_tiers = spec.model.num_tiers();
  (void)spec.policy.allowed_in(num_tiers);

  const std::string scalar_header = "sweep_db,sweep_linear,analytic,simulated,stderr,trials,seed\n";
  std::string cov_csv = scalar_header;
  std::string cov0_csv = scalar_header;
  std::string rate_csv = scalar_header;
  std::string load_csv = "sweep_db,sweep_linear,tier,analytic,simulated,stderr,trials,seed\n";

  const std::string seed_cell = std::to_string(spec.sim.seed);

  for (double value : spec.sweep->values) {
    NetworkModel model = apply_sweep(spec.model, spec.sweep->target, value);
    model.noise = resolve_noise(spec.noise, model);
    NetworkModel model_nonoise = model;
    model_nonoise.noise = 0.0;

    const std::string sweep_cells = sweep_columns(spec, value);

    // one simulation per sweep point feeds every requested quantity
    std::vector<TrialOutcome> outcomes;
    std::vector<TrialOutcome> outcomes_nonoise;
    if (with_sim) {
      const bool need_noisy = wants(spec, Quantity::kCoverage) || wants(spec, Quantity::kLoad) ||
                              wants(spec, Quantity::kRate);
      if (need_noisy) outcomes = run_trials(model, spec.policy, spec.sim);
      if (wants(spec, Quantity::kCoverageNoNoise)) {
        if (model.noise == 0.0 && need_noisy)
          outcomes_nonoise = outcomes;
        else
          outcomes_nonoise = run_trials(model_nonoise, spec.policy, spec.sim);
      }
    }

    if (wants(spec, Quantity::kCoverage)) {
      std::string analytic_cell, sim_cell, err_cell, trials_cell;
      if (with_analytic) analytic_cell = fmt_g(coverage_expression(model, spec.policy, spec.quad));
      if (with_sim) {
        const EstimateWithCI e = reduce_coverage(outcomes, spec.sim.seed);
        sim_cell = fmt_g(e.value);
        err_cell = fmt_g(e.std_error);
        trials_cell = std::to_string(e.trials);
      }
      cov_csv += sweep_cells + "," + analytic_cell + "," + sim_cell + "," + err_cell + "," +
                 trials_cell + "," + seed_cell + "\n";
    }

    if (wants(spec, Quantity::kCoverageNoNoise)) {
      std::string analytic_cell, sim_cell, err_cell, trials_cell;
      if (with_analytic)
        analytic_cell = fmt_g(coverage_nonoise_expression(model_nonoise, spec.policy));
      if (with_sim) {
        const EstimateWithCI e = reduce_coverage(outcomes_nonoise, spec.sim.seed);
        sim_cell = fmt_g(e.value);
        err_cell = fmt_g(e.std_error);
        trials_cell = std::to_string(e.trials);
      }
      cov0_csv += sweep_cells + "," + analytic_cell + "," + sim_cell + "," + err_cell + "," +
                  trials_cell + "," + seed_cell + "\n";
    }

    if (wants(spec, Quantity::kLoad)) {
      LoadVector analytic_load;
      std::vector<EstimateWithCI> sim_load;
      if (with_analytic) analytic_load = load_expression(model, spec.policy, spec.quad);
      if (with_sim) sim_load = reduce_load(outcomes, num_tiers, spec.sim.seed);
      for (int tier = 1; tier <= num_tiers; ++tier) {
        std::string analytic_cell, sim_cell, err_cell, trials_cell;
        if (with_analytic) analytic_cell = fmt_g(analytic_load.fractions[tier - 1]);
        if (with_sim) {
          sim_cell = fmt_g(sim_load[tier - 1].value);
          err_cell = fmt_g(sim_load[tier - 1].std_error);
          trials_cell = std::to_string(sim_load[tier - 1].trials);
        }
        load_csv += sweep_cells + "," + std::to_string(tier) + "," + analytic_cell + "," +
                    sim_cell + "," + err_cell + "," + trials_cell + "," + seed_cell + "\n";
      }
    }

    if (wants(spec, Quantity::kRate)) {
      std::string analytic_cell, sim_cell, err_cell, trials_cell;
      if (with_analytic && model.noise == 0.0)
        analytic_cell = fmt_g(rate_expression(model, spec.policy, spec.quad));
      if (with_sim) {
        const EstimateWithCI e = reduce_rate(outcomes, spec.sim.seed);
        sim_cell = fmt_g(e.value);
        err_cell = fmt_g(e.std_error);
        trials_cell = std::to_string(e.trials);
      }
      rate_csv += sweep_cells + "," + analytic_cell + "," + sim_cell + "," + err_cell + "," +
                  trials_cell + "," + seed_cell + "\n";
    }
  }

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  if (wants(spec, Quantity::kCoverage)) write_file(dir / "coverage.csv", cov_csv);
  if (wants(spec, Quantity::kCoverageNoNoise)) write_file(dir / "coverage_nonoise.csv", cov0_csv);
  if (wants(spec, Quantity::kLoad)) write_file(dir / "load.csv", load_csv);
  if (wants(spec, Quantity::kRate)) write_file(dir / "rate.csv", rate_csv);
  write_file(dir / "effective_spec.cfg", effective_spec_text(spec));
}

void run_regions(const ExperimentSpec& spec, const std::string& out_dir) {
  NetworkModel model = spec.model;
  model.noise = resolve_noise(spec.noise, model);

  const Deployment deployment = sample_deployment(model, spec.sim, 0);
  if (deployment.stations.empty())
    raise(ErrorCode::EmptyDeployment,
          "no stations fell inside the window; enlarge window_radius_m or the densities");

  const double extent = spec.raster.extent > 0.0
                            ? spec.raster.extent
                            : deployment.window_radius * std::sqrt(2.0);
  const RegionRaster raster = rasterize(deployment, model, spec.raster.width,
                                        spec.raster.height, extent, spec.sim.mode);

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / "regions.ppm", ppm_bytes(raster, spec.sim.seed));
  if (spec.raster.pixel_csv) {
    std::ostringstream csv;
    write_pixel_csv(raster, csv);
    write_file(dir / "regions.csv", csv.str());
  }
  write_file(dir / "effective_spec.cfg", effective_spec_text(spec));
}

}  // namespace hetnet
