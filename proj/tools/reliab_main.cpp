#include <charconv>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "reliab/bench.hpp"
#include "reliab/errors.hpp"
#include "reliab/io.hpp"
#include "reliab/observe.hpp"
#include "reliab/sampler.hpp"
#include "reliab/summary.hpp"
#include "reliab/version.hpp"

namespace {

namespace fs = std::filesystem;
using namespace reliab;

using MetaPairs = std::vector<std::pair<std::string, std::string>>;

// "--scenario" accepts a builtin id (1-6) or a scenario JSON path.
Scenario load_scenario(const std::string& text) {
    int id = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), id);
    if (ec == std::errc{} && ptr == text.data() + text.size()) return builtin_scenario(id);
    return read_scenario_file(text);
}

std::string join_ints(const std::vector<int>& values) {
    std::ostringstream out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ',';
        out << values[i];
    }
    return out.str();
}

struct SimulateArgs {
    std::string scenario;
    std::string structure;  // optional override of the scenario structure
    int n = 0;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
};

int cmd_simulate(const SimulateArgs& args) {
    Scenario scenario = load_scenario(args.scenario);
    if (!args.structure.empty()) {
        StructureExpr expr = structure_from_string(args.structure);
        if (expr.component_count() != static_cast<int>(scenario.components.size()))
            throw ConfigError("structure override needs " +
                              std::to_string(scenario.components.size()) + " components");
        scenario.structure = std::move(expr);
    }
    std::vector<GeneratorParams> solved;
    solved.reserve(scenario.components.size());
    for (const auto& spec : scenario.components) solved.push_back(solve_params(spec));

    const SimulatedSystems sim = simulate_systems(
        scenario.structure, solved, static_cast<std::size_t>(args.n), args.seed);

    const fs::path dir(args.out_dir);
    write_observations_csv(dir / "observations.csv", sim.units);
    write_truth_json(dir / "truth.json", scenario, solved, sim.system_lifetimes, args.seed);
    write_run_meta(dir / "run_meta.json", "simulate", args.seed,
                   MetaPairs{{"scenario", args.scenario},
                             {"structure", to_string(scenario.structure)},
                             {"n", std::to_string(args.n)}});

    const auto table = censoring_table(component_datasets(sim));
    std::cout << "wrote " << (dir / "observations.csv").string() << " (" << args.n
              << " units, " << table.size() << " components)\n";
    std::cout << "component  left%   right%  interval%  total%\n";
    for (const auto& row : table) {
        char line[128];
        std::snprintf(line, sizeof line, "%9d  %6.2f  %6.2f  %9.2f  %6.2f\n",
                      row.component_id, row.left_pct, row.right_pct, row.interval_pct,
                      row.total_pct);
        std::cout << line;
    }
    return 0;
}

struct FitArgs {
    std::string input;
    int component = 1;
    SamplerConfig config;
    double prior_b = 1.0;
    std::string out_dir = ".";
};

int cmd_fit(const FitArgs& args) {
    const auto datasets = read_observations_csv(args.input);
    if (args.component < 1 || args.component > static_cast<int>(datasets.size()))
        throw DataError("component " + std::to_string(args.component) +
                        " not present (file has " + std::to_string(datasets.size()) + ")");
    const ComponentDataset& data = datasets[static_cast<std::size_t>(args.component - 1)];

    const PriorSpec prior{args.prior_b};
    const FitResult result = fit(data, prior, args.config, Exec::parallel);

    const fs::path dir(args.out_dir);
    write_chains_csv(dir / "chains.csv", result, args.config);
    write_diagnostics_json(dir / "diagnostics.json", result, args.config, args.prior_b);
    write_run_meta(dir / "run_meta.json", "fit", args.config.seed,
                   MetaPairs{{"input", args.input},
                             {"component", std::to_string(args.component)},
                             {"iters", std::to_string(args.config.total)},
                             {"burnin", std::to_string(args.config.burnin)},
                             {"thin", std::to_string(args.config.thin)},
                             {"chains", std::to_string(args.config.chains)},
                             {"prior_b", format_double(args.prior_b)}});

    std::cout << "fit component " << args.component << ": "
              << result.chains.front().draws.size() << " draws/chain x "
              << result.chains.size() << " chains, mu_max = "
              << format_double(result.mu_max) << '\n';
    std::cout << "split R-hat: beta " << result.diagnostics.rhat_beta << ", eta "
              << result.diagnostics.rhat_eta << ", mu " << result.diagnostics.rhat_mu
              << '\n';
    if (!result.diagnostics.converged)
        std::cerr << "warning: split R-hat above " << kRhatThreshold
                  << "; chains may not have converged\n";
    return 0;
}

struct SummarizeArgs {
    std::string input;
    double hpd_level = 0.95;
    std::string out_dir = ".";
};

int cmd_summarize(const SummarizeArgs& args) {
    const auto chains = read_chains_csv(args.input);
    const auto grid = default_grid(chains);
    const ReliabilityCurve curve =
        reliability_curve(chains, grid, args.hpd_level, Exec::parallel);
    const ParameterSummary summary = parameter_summary(chains);

    const fs::path dir(args.out_dir);
    write_curve_csv(dir / "curve.csv", curve);
    write_summary_json(dir / "summary.json", summary, curve);
    write_curve_plot_script(dir / "plot_curve.gp", curve);
    write_run_meta(dir / "run_meta.json", "summarize", 0,
                   MetaPairs{{"input", args.input},
                             {"hpd", format_double(args.hpd_level)},
                             {"grid_points", std::to_string(grid.size())}});

    std::cout << "posterior means: beta " << summary.beta_mean << " (sd "
              << summary.beta_sd << "), eta " << summary.eta_mean << " (sd "
              << summary.eta_sd << "), mu " << summary.mu_mean << " (sd "
              << summary.mu_sd << ")\n";
    std::cout << "mean lifetime: " << summary.lifetime_mean << " (sd "
              << summary.lifetime_sd << ")\n";
    return 0;
}

struct BenchmarkArgs {
    std::string scenario;
    std::vector<int> sizes{25, 50, 100, 300, 1000};
    int replications = 50;
    std::uint64_t seed = 0;
    SamplerConfig sampler = bench_sampler_defaults();
    std::string out_dir = ".";
};

int cmd_benchmark(const BenchmarkArgs& args) {
    const Scenario scenario = load_scenario(args.scenario);
    const BenchProgress progress = [](const std::string& msg) {
        std::cerr << msg << '\n';
    };
    const BenchReport report = run_benchmark(scenario, args.sizes, args.replications,
                                             args.seed, args.sampler, Exec::parallel,
                                             progress);

    const fs::path dir(args.out_dir);
    write_bench_report_json(dir / "report.json", report);
    write_mae_curves_csv(dir / "mae_curves.csv", report);
    write_mae_plot_script(dir / "plot_mae.gp", report);
    write_run_meta(dir / "run_meta.json", "benchmark", args.seed,
                   MetaPairs{{"scenario", args.scenario},
                             {"sizes", join_ints(args.sizes)},
                             {"replications", std::to_string(args.replications)},
                             {"iters", std::to_string(args.sampler.total)},
                             {"burnin", std::to_string(args.sampler.burnin)},
                             {"thin", std::to_string(args.sampler.thin)}});

    std::cout << "scenario " << report.scenario_id << ": " << report.cells.size()
              << " cells written to " << (dir / "report.json").string() << '\n';
    for (const auto& cell : report.cells)
        std::cout << "n=" << cell.n << " component " << cell.component_id
                  << ": MAE " << cell.mae_mean << " (sd " << cell.mae_sd << ", "
                  << cell.failures << " failed)\n";
    return 0;
}

struct IngestArgs {
    std::string input;
    std::string out_dir = ".";
};

int cmd_ingest(const IngestArgs& args) {
    const auto observations = ingest_usage_csv(args.input);
    std::vector<std::vector<Observation>> units;
    units.reserve(observations.size());
    for (const auto& obs : observations) units.push_back({obs});

    const fs::path dir(args.out_dir);
    write_observations_csv(dir / "observations.csv", units);
    write_run_meta(dir / "run_meta.json", "ingest", 0, MetaPairs{{"input", args.input}});

    std::cout << "ingested " << observations.size() << " subjects into "
              << (dir / "observations.csv").string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian component reliability estimation from censored system data"};
    app.set_version_flag("--version", std::string("reliab ") + kVersion);
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand(
        "simulate", "Draw system lifetimes and write per-component observations");
    simulate->add_option("--scenario", sim.scenario, "Builtin scenario id (1-6) or scenario JSON path")
        ->required();
    simulate->add_option("--structure", sim.structure, "Structure override (name or expression)");
    simulate->add_option("--n", sim.n, "Number of system units")
        ->required()
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "Master seed")->required();
    simulate->add_option("--out-dir", sim.out_dir, "Output directory");

    FitArgs fitargs;
    auto* fitcmd = app.add_subcommand(
        "fit", "Sample the posterior of one component from observations.csv");
    fitcmd->add_option("input", fitargs.input, "observations.csv path")->required();
    fitcmd->add_option("--component", fitargs.component, "Component id (1-based)")
        ->required()
        ->check(CLI::PositiveNumber);
    fitcmd->add_option("--iters", fitargs.config.total, "Total iterations per chain");
    fitcmd->add_option("--burnin", fitargs.config.burnin, "Burn-in iterations");
    fitcmd->add_option("--thin", fitargs.config.thin, "Thinning stride");
    fitcmd->add_option("--chains", fitargs.config.chains, "Number of chains");
    fitcmd->add_option("--seed", fitargs.config.seed, "Master seed");
    fitcmd->add_option("--prior-b", fitargs.prior_b, "Prior exponent b in 1/(eta beta^b)");
    fitcmd->add_option("--out-dir", fitargs.out_dir, "Output directory");

    SummarizeArgs sum;
    auto* summarize = app.add_subcommand(
        "summarize", "Posterior summaries and reliability curve from chains.csv");
    summarize->add_option("input", sum.input, "chains.csv path")->required();
    summarize->add_option("--hpd", sum.hpd_level, "HPD band level")
        ->check(CLI::Range(0.5, 0.999));
    summarize->add_option("--out-dir", sum.out_dir, "Output directory");

    BenchmarkArgs bench;
    auto* benchmark = app.add_subcommand(
        "benchmark", "Replication study: MAE of the posterior-mean reliability");
    benchmark->add_option("--scenario", bench.scenario, "Builtin scenario id (1-6) or scenario JSON path")
        ->required();
    benchmark->add_option("--sizes", bench.sizes, "System-unit counts")->delimiter(',');
    benchmark->add_option("--replications", bench.replications, "Replications per size")
        ->check(CLI::PositiveNumber);
    benchmark->add_option("--seed", bench.seed, "Master seed")->required();
    benchmark->add_option("--iters", bench.sampler.total, "Sampler iterations per fit");
    benchmark->add_option("--burnin", bench.sampler.burnin, "Sampler burn-in per fit");
    benchmark->add_option("--thin", bench.sampler.thin, "Sampler thinning per fit");
    benchmark->add_option("--out-dir", bench.out_dir, "Output directory");

    IngestArgs ing;
    auto* ingest = app.add_subcommand(
        "ingest", "Convert a subject,status,age CSV into observations.csv");
    ingest->add_option("input", ing.input, "Raw usage CSV path")->required();
    ingest->add_option("--out-dir", ing.out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*simulate) return cmd_simulate(sim);
        if (*fitcmd) return cmd_fit(fitargs);
        if (*summarize) return cmd_summarize(sum);
        if (*benchmark) return cmd_benchmark(bench);
        if (*ingest) return cmd_ingest(ing);
    } catch (const SolveError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const SamplerInitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
