// hcn: evaluate and simulate K-tier downlink coverage, load, rate and
// region maps from a key-value experiment spec.
//
// Exit codes: 0 success, 2 configuration error, 3 quadrature failure,
// 4 no covered trials (conditional estimators undefined), 1 anything else.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hetnet/experiment.hpp"

namespace {

struct RunOptions {
  std::string spec_path;
  std::string preset;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
};

void add_run_options(CLI::App* cmd, RunOptions& opts) {
  cmd->add_option("--spec", opts.spec_path, "experiment spec file");
  cmd->add_option("--preset", opts.preset, "built-in preset name (see: presets list)");
  cmd->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--seed", opts.seed, "override the spec's seed");
  cmd->add_option("--trials", opts.trials, "override the spec's trial count");
}

hetnet::ExperimentSpec load_spec(const RunOptions& opts) {
  if (opts.spec_path.empty() == opts.preset.empty())
    hetnet::raise(hetnet::ErrorCode::ConfigError, "give exactly one of --spec or --preset");
  hetnet::ExperimentSpec spec = opts.spec_path.empty()
                                    ? hetnet::parse_spec_text(hetnet::preset_spec(opts.preset))
                                    : hetnet::parse_spec_file(opts.spec_path);
  if (opts.seed) spec.sim.seed = *opts.seed;
  if (opts.trials) {
    if (*opts.trials < 1)
      hetnet::raise(hetnet::ErrorCode::ConfigError, "--trials must be >= 1");
    spec.sim.trials = *opts.trials;
  }
  return spec;
}

int exit_code_for(const hetnet::Error& e) {
  switch (e.code()) {
    case hetnet::ErrorCode::ConfigError: return 2;
    case hetnet::ErrorCode::QuadratureFailure: return 3;
    case hetnet::ErrorCode::NoCoveredTrials: return 4;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-tier downlink heterogeneous network coverage toolkit"};
  app.require_subcommand(1);

  RunOptions analyze_opts, simulate_opts, compare_opts, regions_opts;
  CLI::App* analyze = app.add_subcommand("analyze", "evaluate the analytic expressions over a sweep");
  add_run_options(analyze, analyze_opts);
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimates over a sweep");
  add_run_options(simulate, simulate_opts);
  CLI::App* compare = app.add_subcommand("compare", "analytic and Monte Carlo columns side by side");
  add_run_options(compare, compare_opts);
  CLI::App* regions = app.add_subcommand("regions", "rasterize the coverage regions of one deployment");
  add_run_options(regions, regions_opts);

  CLI::App* presets = app.add_subcommand("presets", "built-in experiment presets");
  presets->require_subcommand(1);
  presets->add_subcommand("list", "list preset names");
  std::string show_name;
  CLI::App* show = presets->add_subcommand("show", "print a preset spec");
  show->add_option("name", show_name, "preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed())
      hetnet::run_experiment(load_spec(analyze_opts), hetnet::RunMode::kAnalyze, analyze_opts.out_dir);
    else if (simulate->parsed())
      hetnet::run_experiment(load_spec(simulate_opts), hetnet::RunMode::kSimulate, simulate_opts.out_dir);
    else if (compare->parsed())
      hetnet::run_experiment(load_spec(compare_opts), hetnet::RunMode::kCompare, compare_opts.out_dir);
    else if (regions->parsed())
      hetnet::run_regions(load_spec(regions_opts), regions_opts.out_dir);
    else if (presets->parsed()) {
      if (show->parsed()) {
        std::cout << hetnet::preset_spec(show_name);
      } else {
        for (const std::string& name : hetnet::preset_names()) std::cout << name << "\n";
      }
    }
  } catch (const hetnet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
