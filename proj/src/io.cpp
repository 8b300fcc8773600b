#include "reliab/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "reliab/errors.hpp"
#include "reliab/version.hpp"

namespace reliab {

namespace {

using ordered_json = nlohmann::ordered_json;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read '" + path.string() + "'");
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
    if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

void write_json_file(const std::filesystem::path& path, const ordered_json& j) {
    write_text(path, j.dump(2) + "\n");
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

long parse_int(std::string_view token, const char* what) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(std::string("bad ") + what + " '" + std::string(token) + "'");
    return v;
}

void validate_observation(double lower, double upper, std::size_t line_no) {
    const auto fail = [line_no](const char* msg) {
        throw DataError("line " + std::to_string(line_no) + ": " + msg);
    };
    if (!(lower >= 0.0)) fail("lower bound must be >= 0");
    if (!(upper >= lower)) fail("upper bound must be >= lower bound");
    if (lower == upper && !(lower > 0.0)) fail("exact time must be positive");
    if (upper == kInf && !(lower > 0.0)) fail("right-censor time must be positive");
}

ordered_json params_json(const GeneratorParams& params) {
    ordered_json j;
    j["family"] = std::string(family_name(family_of(params)));
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Weibull2Params>) {
                j["beta"] = p.beta;
                j["eta"] = p.eta;
            } else if constexpr (std::is_same_v<T, Weibull3Params>) {
                j["beta"] = p.beta;
                j["eta"] = p.eta;
                j["mu"] = p.mu;
            } else if constexpr (std::is_same_v<T, GammaParams>) {
                j["shape"] = p.shape;
                j["scale"] = p.scale;
            } else if constexpr (std::is_same_v<T, LognormalParams>) {
                j["meanlog"] = p.meanlog;
                j["sdlog"] = p.sdlog;
            } else {
                j["a"] = p.a;
                j["b"] = p.b;
                j["lambda"] = p.lambda;
            }
        },
        params);
    return j;
}

ordered_json spec_json(const GeneratorSpec& spec) {
    ordered_json j;
    j["family"] = std::string(family_name(spec.family));
    j["mean"] = spec.target_mean;
    j["variance"] = spec.target_variance;
    if (spec.fixed)
        j["fixed"] = *spec.fixed;
    else
        j["fixed"] = nullptr;
    return j;
}

ordered_json sampler_json(const SamplerConfig& cfg) {
    ordered_json j;
    j["total"] = cfg.total;
    j["burnin"] = cfg.burnin;
    j["thin"] = cfg.thin;
    j["adapt_start"] = cfg.adapt_start;
    j["jitter"] = cfg.jitter;
    j["seed"] = cfg.seed;
    j["chains"] = cfg.chains;
    return j;
}

}  // namespace

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_time(std::string_view token, bool allow_inf) {
    if (token == "inf") {
        if (!allow_inf) throw ParseError("'inf' not allowed in this column");
        return kInf;
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(v))
        throw ParseError("bad numeric token '" + std::string(token) + "'");
    return v;
}

StructureExpr structure_from_string(std::string_view text) {
    if (text == "two_of_three" || text == "2of3") return two_of_three();
    if (text == "bridge") return bridge();
    return parse_structure(text);
}

void write_observations_csv(const std::filesystem::path& path,
                            const std::vector<std::vector<Observation>>& units) {
    auto out = open_out(path);
    out << "unit,component,lower,upper\n";
    for (std::size_t i = 0; i < units.size(); ++i)
        for (std::size_t j = 0; j < units[i].size(); ++j)
            out << (i + 1) << ',' << (j + 1) << ',' << format_double(units[i][j].lower)
                << ',' << format_double(units[i][j].upper) << '\n';
    if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

std::vector<ComponentDataset> read_observations_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "unit,component,lower,upper")
        throw ParseError("expected header 'unit,component,lower,upper'");
    int max_component = 0;
    struct Row {
        long unit;
        int component;
        Observation obs;
    };
    std::vector<Row> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_csv(lines[i]);
        if (fields.size() != 4)
            throw ParseError("line " + std::to_string(i + 1) + ": expected 4 columns");
        Row row;
        row.unit = parse_int(fields[0], "unit");
        row.component = static_cast<int>(parse_int(fields[1], "component"));
        if (row.unit < 1 || row.component < 1)
            throw DataError("line " + std::to_string(i + 1) +
                            ": unit and component must be >= 1");
        row.obs.lower = parse_time(fields[2], false);
        row.obs.upper = parse_time(fields[3], true);
        validate_observation(row.obs.lower, row.obs.upper, i + 1);
        max_component = std::max(max_component, row.component);
        rows.push_back(row);
    }
    if (rows.empty()) throw DataError("no observation rows");
    std::vector<ComponentDataset> datasets(static_cast<std::size_t>(max_component));
    for (int j = 0; j < max_component; ++j)
        datasets[static_cast<std::size_t>(j)].component_id = j + 1;
    for (const auto& row : rows)
        datasets[static_cast<std::size_t>(row.component - 1)].rows.push_back(row.obs);
    for (const auto& ds : datasets)
        if (ds.rows.empty())
            throw DataError("component " + std::to_string(ds.component_id) +
                            " has no rows");
    return datasets;
}

Scenario read_scenario_file(const std::filesystem::path& path) {
    auto in = open_in(path);
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("scenario file: " + std::string(e.what()));
    }
    try {
        Scenario s;
        s.id = j.value("id", 0);
        s.structure = structure_from_string(j.at("structure").get<std::string>());
        for (const auto& c : j.at("components")) {
            GeneratorSpec spec;
            spec.family = family_from_string(c.at("family").get<std::string>());
            spec.target_mean = c.at("mean").get<double>();
            spec.target_variance = c.at("variance").get<double>();
            if (c.contains("fixed") && !c.at("fixed").is_null())
                spec.fixed = c.at("fixed").get<double>();
            s.components.push_back(spec);
        }
        if (static_cast<int>(s.components.size()) != s.structure.component_count())
            throw ConfigError("scenario component count does not match its structure");
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("scenario file: " + std::string(e.what()));
    }
}

void write_chains_csv(const std::filesystem::path& path, const FitResult& fit,
                      const SamplerConfig& config) {
    auto out = open_out(path);
    out << "chain,iter,beta,eta,mu,log_kernel\n";
    for (std::size_t c = 0; c < fit.chains.size(); ++c) {
        const Chain& chain = fit.chains[c];
        for (std::size_t k = 0; k < chain.draws.size(); ++k) {
            const long iter =
                config.burnin + static_cast<long>(k + 1) * config.thin;
            const WeibullParams& p = chain.draws[k];
            out << (c + 1) << ',' << iter << ',' << format_double(p.beta) << ','
                << format_double(p.eta) << ',' << format_double(p.mu) << ','
                << format_double(chain.log_kernels[k]) << '\n';
        }
    }
    if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

std::vector<Chain> read_chains_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || lines[0] != "chain,iter,beta,eta,mu,log_kernel")
        throw ParseError("expected header 'chain,iter,beta,eta,mu,log_kernel'");
    std::vector<Chain> chains;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_csv(lines[i]);
        if (fields.size() != 6)
            throw ParseError("line " + std::to_string(i + 1) + ": expected 6 columns");
        const long chain_id = parse_int(fields[0], "chain");
        if (chain_id < 1) throw DataError("chain ids must be >= 1");
        parse_int(fields[1], "iter");
        WeibullParams p;
        p.beta = parse_time(fields[2], false);
        p.eta = parse_time(fields[3], false);
        p.mu = parse_time(fields[4], false);
        if (!(p.beta > 0.0) || !(p.eta > 0.0) || !(p.mu >= 0.0))
            throw DataError("line " + std::to_string(i + 1) +
                            ": parameters out of range");
        double lk = 0.0;
        if (fields[5] == "-inf") {
            lk = -kInf;
        } else {
            lk = parse_time(fields[5], false);
        }
        if (chains.size() < static_cast<std::size_t>(chain_id))
            chains.resize(static_cast<std::size_t>(chain_id));
        chains[static_cast<std::size_t>(chain_id - 1)].draws.push_back(p);
        chains[static_cast<std::size_t>(chain_id - 1)].log_kernels.push_back(lk);
    }
    for (std::size_t c = 0; c < chains.size(); ++c)
        if (chains[c].draws.empty())
            throw DataError("chain " + std::to_string(c + 1) + " has no draws");
    if (chains.empty()) throw DataError("no chain rows");
    return chains;
}

void write_diagnostics_json(const std::filesystem::path& path, const FitResult& fit,
                            const SamplerConfig& config, double prior_b) {
    ordered_json j;
    j["acceptance_rates"] = ordered_json::array();
    for (const auto& chain : fit.chains) j["acceptance_rates"].push_back(chain.acceptance_rate);
    j["chain_seeds"] = ordered_json::array();
    for (const auto& chain : fit.chains) j["chain_seeds"].push_back(chain.seed);
    j["rhat"] = {{"beta", fit.diagnostics.rhat_beta},
                 {"eta", fit.diagnostics.rhat_eta},
                 {"mu", fit.diagnostics.rhat_mu}};
    j["converged"] = fit.diagnostics.converged;
    j["mu_max"] = fit.mu_max;
    j["initial"] = {{"beta", fit.initial.beta},
                    {"eta", fit.initial.eta},
                    {"mu", fit.initial.mu}};
    j["retained_per_chain"] = (config.total - config.burnin) / config.thin;
    j["prior_b"] = prior_b;
    j["config"] = sampler_json(config);
    write_json_file(path, j);
}

void write_curve_csv(const std::filesystem::path& path, const ReliabilityCurve& curve) {
    if (curve.hpd_lower.size() != curve.grid.size() ||
        curve.hpd_upper.size() != curve.grid.size() ||
        curve.mean.size() != curve.grid.size())
        throw ConfigError("curve is missing mean or band values");
    auto out = open_out(path);
    out << "t,mean,hpd_lower,hpd_upper\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
        out << format_double(curve.grid[i]) << ',' << format_double(curve.mean[i]) << ','
            << format_double(curve.hpd_lower[i]) << ','
            << format_double(curve.hpd_upper[i]) << '\n';
    if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

void write_summary_json(const std::filesystem::path& path, const ParameterSummary& s,
                        const ReliabilityCurve& curve) {
    ordered_json j;
    j["beta"] = {{"mean", s.beta_mean}, {"sd", s.beta_sd}};
    j["eta"] = {{"mean", s.eta_mean}, {"sd", s.eta_sd}};
    j["mu"] = {{"mean", s.mu_mean}, {"sd", s.mu_sd}};
    j["mean_lifetime"] = {{"mean", s.lifetime_mean}, {"sd", s.lifetime_sd}};
    j["hpd_level"] = curve.level;
    j["band"] = "pointwise";
    j["grid_points"] = curve.grid.size();
    write_json_file(path, j);
}

void write_curve_plot_script(const std::filesystem::path& path,
                             const ReliabilityCurve& curve) {
    std::ostringstream script;
    script << "set datafile separator ','\n"
           << "set terminal pngcairo size 900,600\n"
           << "set output 'reliability.png'\n"
           << "set xlabel 't'\n"
           << "set ylabel 'R(t)'\n"
           << "set yrange [0:1]\n"
           << "plot 'curve.csv' every ::1 using 1:3:4 with filledcurves fc rgb '#d0d0d0' "
           << "title '" << 100.0 * curve.level << "% HPD band', \\\n"
           << "     'curve.csv' every ::1 using 1:2 with lines lw 2 lc rgb '#1f77b4' "
           << "title 'posterior mean'\n";
    write_text(path, script.str());
}

void write_truth_json(const std::filesystem::path& path, const Scenario& scenario,
                      const std::vector<GeneratorParams>& solved,
                      const std::vector<double>& system_lifetimes, std::uint64_t seed) {
    ordered_json j;
    j["structure"] = to_string(scenario.structure);
    j["seed"] = seed;
    j["n"] = system_lifetimes.size();
    j["components"] = ordered_json::array();
    for (std::size_t i = 0; i < scenario.components.size(); ++i) {
        ordered_json c = spec_json(scenario.components[i]);
        c["solved"] = params_json(solved[i]);
        j["components"].push_back(c);
    }
    j["system_lifetimes"] = system_lifetimes;
    write_json_file(path, j);
}

void write_bench_report_json(const std::filesystem::path& path,
                             const BenchReport& report) {
    ordered_json j;
    j["scenario"] = report.scenario_id;
    j["structure"] = report.structure;
    j["sizes"] = report.sizes;
    j["replications"] = report.replications;
    j["seed"] = report.seed;
    j["sampler"] = sampler_json(report.sampler);
    j["components"] = ordered_json::array();
    for (std::size_t i = 0; i < report.component_specs.size(); ++i) {
        ordered_json c = spec_json(report.component_specs[i]);
        c["solved"] = params_json(report.solved_params[i]);
        j["components"].push_back(c);
    }
    j["censoring"] = ordered_json::array();
    for (const auto& row : report.censoring)
        j["censoring"].push_back({{"component", row.component_id},
                                  {"left_pct", row.left_pct},
                                  {"right_pct", row.right_pct},
                                  {"interval_pct", row.interval_pct},
                                  {"total_pct", row.total_pct}});
    j["cells"] = ordered_json::array();
    for (const auto& cell : report.cells)
        j["cells"].push_back({{"n", cell.n},
                              {"component", cell.component_id},
                              {"mae_mean", cell.mae_mean},
                              {"mae_sd", cell.mae_sd},
                              {"failures", cell.failures},
                              {"mae_values", cell.mae_values}});
    write_json_file(path, j);
}

void write_mae_curves_csv(const std::filesystem::path& path, const BenchReport& report) {
    auto out = open_out(path);
    out << "scenario,n,component,mae_mean,mae_sd,failures\n";
    for (const auto& cell : report.cells)
        out << report.scenario_id << ',' << cell.n << ',' << cell.component_id << ','
            << format_double(cell.mae_mean) << ',' << format_double(cell.mae_sd) << ','
            << cell.failures << '\n';
    if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

void write_mae_plot_script(const std::filesystem::path& path, const BenchReport& report) {
    int m = 0;
    for (const auto& cell : report.cells) m = std::max(m, cell.component_id);
    std::ostringstream script;
    script << "set datafile separator ','\n"
           << "set terminal pngcairo size 900,600\n"
           << "set output 'mae.png'\n"
           << "set logscale x\n"
           << "set xlabel 'sample size n'\n"
           << "set ylabel 'mean MAE'\n"
           << "set key top right\n"
           << "plot for [c=1:" << m << "] 'mae_curves.csv' every ::1 "
           << "using 2:($3==c?$4:1/0) with linespoints title sprintf('component %d', c)\n";
    write_text(path, script.str());
}

void write_run_meta(const std::filesystem::path& path, const std::string& subcommand,
                    std::uint64_t seed,
                    const std::vector<std::pair<std::string, std::string>>& config) {
    ordered_json j;
    j["tool"] = "reliab";
    j["version"] = kVersion;
    j["subcommand"] = subcommand;
    j["seed"] = seed;
    ordered_json cfg;
    for (const auto& [k, v] : config) cfg[k] = v;
    j["config"] = cfg;
    write_json_file(path, j);
}

std::vector<Observation> ingest_usage_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty() ||
        (lines[0] != "subject,status,age_or_current_age" && lines[0] != "subject,status,age"))
        throw ParseError("expected header 'subject,status,age_or_current_age'");
    std::vector<Observation> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = split_csv(lines[i]);
        if (fields.size() != 3)
            throw ParseError("line " + std::to_string(i + 1) + ": expected 3 columns");
        const std::string_view status = fields[1];
        const double age = parse_time(fields[2], false);
        if (!(age > 0.0))
            throw DataError("line " + std::to_string(i + 1) + ": age must be positive");
        if (status == "used_remembers") {
            out.push_back(interval_coarsen(age, 1.0));
        } else if (status == "never_used") {
            out.push_back({age, kInf});
        } else if (status == "used_forgot") {
            out.push_back({0.0, age});
        } else {
            throw DataError("line " + std::to_string(i + 1) + ": unknown status '" +
                            std::string(status) + "'");
        }
    }
    if (out.empty()) throw DataError("no subject rows");
    return out;
}

}  // namespace reliab
