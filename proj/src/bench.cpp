#include "reliab/bench.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "reliab/errors.hpp"

namespace reliab {

namespace {

Scenario make_scenario(int id, StructureExpr structure,
                       std::vector<GeneratorSpec> components) {
    Scenario s;
    s.id = id;
    s.structure = std::move(structure);
    s.components = std::move(components);
    return s;
}

GeneratorSpec spec_of(Family family, double mean, double variance) {
    GeneratorSpec g;
    g.family = family;
    g.target_mean = mean;
    g.target_variance = variance;
    return g;
}

}  // namespace

Scenario builtin_scenario(int id) {
    using F = Family;
    switch (id) {
        case 1:
            return make_scenario(1, two_of_three(),
                                 {spec_of(F::weibull2, 15, 8), spec_of(F::gamma, 18, 12),
                                  spec_of(F::lognormal, 20, 10)});
        case 2:
            return make_scenario(2, two_of_three(),
                                 {spec_of(F::lognormal, 4, 7),
                                  spec_of(F::modified_weibull, 2.88, 12.44),
                                  spec_of(F::weibull3, 5, 3)});
        case 3:
            return make_scenario(3, two_of_three(),
                                 {spec_of(F::weibull2, 10, 2), spec_of(F::weibull2, 11, 10),
                                  spec_of(F::weibull2, 10, 8)});
        case 4:
            return make_scenario(4, two_of_three(),
                                 {spec_of(F::modified_weibull, 1.6, 6),
                                  spec_of(F::modified_weibull, 2.4, 4),
                                  spec_of(F::modified_weibull, 2.9, 13)});
        case 5:
            return make_scenario(5, bridge(),
                                 {spec_of(F::weibull2, 17, 8), spec_of(F::lognormal, 16, 22),
                                  spec_of(F::lognormal, 15, 15), spec_of(F::gamma, 15, 6),
                                  spec_of(F::gamma, 20, 12)});
        case 6:
            return make_scenario(6, bridge(),
                                 {spec_of(F::weibull2, 4, 15),
                                  spec_of(F::modified_weibull, 5.6, 15),
                                  spec_of(F::lognormal, 6, 7), spec_of(F::gamma, 5, 8),
                                  spec_of(F::weibull3, 4, 8)});
        default:
            throw ConfigError("scenario id must be 1..6");
    }
}

SamplerConfig bench_sampler_defaults() {
    SamplerConfig cfg;
    cfg.total = 6000;
    cfg.burnin = 3000;
    cfg.thin = 3;
    cfg.chains = 1;
    return cfg;
}

double mae(const std::vector<double>& estimate, const std::vector<double>& truth) {
    if (estimate.empty() || estimate.size() != truth.size())
        throw ConfigError("MAE needs two equal-length nonempty grids");
    double s = 0.0;
    for (std::size_t i = 0; i < estimate.size(); ++i)
        s += std::abs(estimate[i] - truth[i]);
    return s / static_cast<double>(estimate.size());
}

std::vector<double> truth_grid(const GeneratorParams& params, int points) {
    if (points < 2) throw ConfigError("truth grid needs at least 2 points");
    const double upper = invert_survivor(params, 0.005);
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] =
            upper * static_cast<double>(i) / static_cast<double>(points - 1);
    return grid;
}

BenchReport run_benchmark(const Scenario& scenario, const std::vector<int>& sizes,
                          int replications, std::uint64_t master_seed,
                          const SamplerConfig& sampler, Exec exec,
                          const BenchProgress& progress) {
    if (sizes.empty()) throw ConfigError("benchmark needs at least one sample size");
    for (int n : sizes)
        if (n < 2) throw ConfigError("benchmark sample sizes must be >= 2");
    if (replications < 1) throw ConfigError("benchmark needs at least one replication");
    const int m = scenario.structure.component_count();
    if (static_cast<int>(scenario.components.size()) != m)
        throw ConfigError("scenario component count does not match its structure");

    BenchReport report;
    report.scenario_id = scenario.id;
    report.structure = to_string(scenario.structure);
    report.sizes = sizes;
    report.replications = replications;
    report.seed = master_seed;
    report.sampler = sampler;
    report.component_specs = scenario.components;
    for (const auto& spec : scenario.components)
        report.solved_params.push_back(solve_params(spec));

    std::vector<std::vector<double>> grids;       // per component
    std::vector<std::vector<double>> truth_vals;  // per component
    for (int j = 0; j < m; ++j) {
        grids.push_back(truth_grid(report.solved_params[static_cast<std::size_t>(j)]));
        std::vector<double> tv;
        tv.reserve(grids.back().size());
        for (double t : grids.back())
            tv.push_back(survivor(report.solved_params[static_cast<std::size_t>(j)], t));
        truth_vals.push_back(std::move(tv));
    }

    if (progress) progress("censoring table: simulating 100000 systems");
    {
        const auto sim = simulate_systems(scenario.structure, report.solved_params,
                                          100000, derive_seed(master_seed, {kStreamCensorTable}),
                                          exec);
        report.censoring = censoring_table(component_datasets(sim));
    }

    // One slot per (size, replication, component); NaN marks an unusable fit.
    const std::size_t n_sizes = sizes.size();
    const std::size_t per_size = static_cast<std::size_t>(replications);
    std::vector<double> slots(n_sizes * per_size * static_cast<std::size_t>(m),
                              std::numeric_limits<double>::quiet_NaN());
    std::vector<std::exception_ptr> errors(n_sizes * per_size);

    auto one_replication = [&](std::size_t flat) {
        const std::size_t si = flat / per_size;
        const std::size_t r = flat % per_size;
        try {
            const int n = sizes[si];
            const std::uint64_t sim_seed =
                derive_seed(master_seed, {kStreamReplication, si, r});
            const auto sim =
                simulate_systems(scenario.structure, report.solved_params,
                                 static_cast<std::size_t>(n), sim_seed, Exec::serial);
            const auto datasets = component_datasets(sim);
            for (int j = 0; j < m; ++j) {
                SamplerConfig cfg = sampler;
                cfg.seed = derive_seed(master_seed,
                                       {kStreamFit, si, r, static_cast<std::uint64_t>(j)});
                double value = std::numeric_limits<double>::quiet_NaN();
                try {
                    const FitResult fit_result =
                        fit(datasets[static_cast<std::size_t>(j)], PriorSpec{}, cfg,
                            Exec::serial);
                    const ReliabilityCurve curve = mean_reliability(
                        fit_result.chains, grids[static_cast<std::size_t>(j)],
                        Exec::serial);
                    value = mae(curve.mean, truth_vals[static_cast<std::size_t>(j)]);
                } catch (const SamplerInitError&) {
                } catch (const DataError&) {
                }
                slots[(flat * static_cast<std::size_t>(m)) +
                      static_cast<std::size_t>(j)] = value;
            }
        } catch (...) {
            errors[flat] = std::current_exception();
        }
    };

    const std::size_t total = n_sizes * per_size;
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long long f = 0; f < static_cast<long long>(total); ++f)
            one_replication(static_cast<std::size_t>(f));
    } else {
        for (std::size_t f = 0; f < total; ++f) {
            one_replication(f);
            if (progress && (f + 1) % per_size == 0)
                progress("size " + std::to_string(sizes[f / per_size]) + ": " +
                         std::to_string(per_size) + " replications done");
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    for (std::size_t si = 0; si < n_sizes; ++si) {
        for (int j = 0; j < m; ++j) {
            BenchCell cell;
            cell.n = sizes[si];
            cell.component_id = j + 1;
            for (std::size_t r = 0; r < per_size; ++r) {
                const double v = slots[((si * per_size + r) * static_cast<std::size_t>(m)) +
                                       static_cast<std::size_t>(j)];
                if (std::isnan(v))
                    ++cell.failures;
                else
                    cell.mae_values.push_back(v);
            }
            if (cell.mae_values.empty()) {
                cell.mae_mean = std::numeric_limits<double>::quiet_NaN();
                cell.mae_sd = std::numeric_limits<double>::quiet_NaN();
            } else {
                double mmean = 0.0;
                for (double v : cell.mae_values) mmean += v;
                mmean /= static_cast<double>(cell.mae_values.size());
                cell.mae_mean = mmean;
                if (cell.mae_values.size() > 1) {
                    double s2 = 0.0;
                    for (double v : cell.mae_values) s2 += (v - mmean) * (v - mmean);
                    cell.mae_sd =
                        std::sqrt(s2 / static_cast<double>(cell.mae_values.size() - 1));
                }
            }
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

}  // namespace reliab
