#pragma once

// File formats: observation/chain/curve CSVs, scenario files, and the JSON
// artifacts. Doubles are written with 17 significant digits so every file
// round-trips losslessly; `inf` is the only non-numeric token.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reliab/bench.hpp"
#include "reliab/observe.hpp"
#include "reliab/sampler.hpp"
#include "reliab/structure.hpp"
#include "reliab/summary.hpp"

namespace reliab {

std::string format_double(double v);

// Strict numeric token: finite decimal, or "inf" when allow_inf is set.
double parse_time(std::string_view token, bool allow_inf);

// Builtin structure names ("two_of_three"/"2of3", "bridge") or inline DSL.
StructureExpr structure_from_string(std::string_view text);

// observations.csv: unit,component,lower,upper
void write_observations_csv(const std::filesystem::path& path,
                            const std::vector<std::vector<Observation>>& units);
std::vector<ComponentDataset> read_observations_csv(const std::filesystem::path& path);

// Scenario file: JSON with "structure" (name or DSL) and "components"
// [{family, mean, variance, fixed?}].
Scenario read_scenario_file(const std::filesystem::path& path);

// chains.csv: chain,iter,beta,eta,mu,log_kernel
void write_chains_csv(const std::filesystem::path& path, const FitResult& fit,
                      const SamplerConfig& config);
std::vector<Chain> read_chains_csv(const std::filesystem::path& path);

void write_diagnostics_json(const std::filesystem::path& path, const FitResult& fit,
                            const SamplerConfig& config, double prior_b);

// curve.csv: t,mean,hpd_lower,hpd_upper
void write_curve_csv(const std::filesystem::path& path, const ReliabilityCurve& curve);

void write_summary_json(const std::filesystem::path& path, const ParameterSummary& s,
                        const ReliabilityCurve& curve);

// Gnuplot script rendering curve.csv (mean line over the HPD band).
void write_curve_plot_script(const std::filesystem::path& path,
                             const ReliabilityCurve& curve);

void write_truth_json(const std::filesystem::path& path, const Scenario& scenario,
                      const std::vector<GeneratorParams>& solved,
                      const std::vector<double>& system_lifetimes, std::uint64_t seed);

void write_bench_report_json(const std::filesystem::path& path, const BenchReport& report);
void write_mae_curves_csv(const std::filesystem::path& path, const BenchReport& report);
void write_mae_plot_script(const std::filesystem::path& path, const BenchReport& report);

// run_meta.json: version + seed + full config echo, no clocks, so identical
// configurations rerun to byte-identical artifacts.
void write_run_meta(const std::filesystem::path& path, const std::string& subcommand,
                    std::uint64_t seed, const std::vector<std::pair<std::string, std::string>>& config);

// Raw first-use CSV (subject,status,age_or_current_age) -> observations:
// used_remembers -> unit interval around the integer age, never_used ->
// right-censored at the current age, used_forgot -> left-censored.
std::vector<Observation> ingest_usage_csv(const std::filesystem::path& path);

}  // namespace reliab
