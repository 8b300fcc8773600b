#pragma once

// Simulation-study harness: run a scenario across sample sizes and
// replications, fit every component, and aggregate mean-absolute-error
// statistics against the true generator reliabilities.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "reliab/distributions.hpp"
#include "reliab/observe.hpp"
#include "reliab/sampler.hpp"
#include "reliab/structure.hpp"
#include "reliab/summary.hpp"

namespace reliab {

struct Scenario {
    int id = 0;  // 0 for user-defined scenarios
    StructureExpr structure;
    std::vector<GeneratorSpec> components;
};

// The six study scenarios: 1-4 are 2-of-3 systems, 5-6 are bridges.
Scenario builtin_scenario(int id);

// Sampler settings sized for replication sweeps (single chain, short run).
SamplerConfig bench_sampler_defaults();

// Mean absolute difference over a common grid.
double mae(const std::vector<double>& estimate, const std::vector<double>& truth);

// 200 equally spaced points from 0 to the generator's 0.995 quantile.
std::vector<double> truth_grid(const GeneratorParams& params, int points = 200);

struct BenchCell {
    int n = 0;
    int component_id = 0;
    double mae_mean = 0.0;
    double mae_sd = 0.0;
    int failures = 0;                // replications skipped (no usable fit)
    std::vector<double> mae_values;  // per successful replication, in order
};

struct BenchReport {
    int scenario_id = 0;
    std::string structure;
    std::vector<int> sizes;
    int replications = 0;
    std::uint64_t seed = 0;
    SamplerConfig sampler;
    std::vector<GeneratorSpec> component_specs;
    std::vector<GeneratorParams> solved_params;
    std::vector<CensoringRow> censoring;  // from a dedicated 10^5-unit run
    std::vector<BenchCell> cells;         // ordered by (size index, component)
};

using BenchProgress = std::function<void(const std::string&)>;

BenchReport run_benchmark(const Scenario& scenario, const std::vector<int>& sizes,
                          int replications, std::uint64_t master_seed,
                          const SamplerConfig& sampler, Exec exec = Exec::parallel,
                          const BenchProgress& progress = {});

}  // namespace reliab
