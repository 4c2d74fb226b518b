#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uniband/aggregation.hpp"
#include "uniband/costs.hpp"
#include "uniband/demand.hpp"
#include "uniband/pipeline.hpp"

namespace uniband {

struct RunConfig {
    std::vector<std::string> countries;  // bundle directories
    std::vector<Scenario> scenarios;
    std::vector<StrategyVector> strategies;
    std::uint64_t seed = 0;
    std::string lut = "generate";        // or a lut.csv path
    std::string costbook_path;           // empty -> built-in defaults
    std::string roster_path;             // required for the global report
    int parallelism = 1;

    std::string config_dir;              // directory of the config file, for relative paths
};

RunConfig load_run_config(const std::string& path);

ValidationReport validate_run_config(const RunConfig& config);

struct SweepResult {
    std::vector<std::string> files_written;
    int triples = 0;
};

// Executes the full sweep: every (country, scenario, strategy) triple gets a
// decomposition.csv and site_plan.csv; the run also emits global_report.csv
// and manifest.json. Output bytes are a pure function of (inputs, config,
// seed) regardless of the worker count.
SweepResult run_sweep(const RunConfig& config, const std::string& out_dir, std::uint64_t seed,
                      int jobs);

// Rebuilds global_report.csv from an existing output tree plus the roster.
void rebuild_report(const std::string& out_dir, const std::string& roster_path, int horizon_years);

}  // namespace uniband
