#include "reliab/observe.hpp"

#include <cmath>
#include <limits>

#include "reliab/errors.hpp"
#include "reliab/rng.hpp"

namespace reliab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ObsKind kind_of(const Observation& obs) {
    if (obs.lower == obs.upper) return ObsKind::exact;
    if (obs.upper == kInf) return ObsKind::right_censored;
    if (obs.lower == 0.0) return ObsKind::left_censored;
    return ObsKind::interval;
}

std::vector<Observation> observe_unit(const StructureExpr& expr,
                                      std::span<const double> lifetimes) {
    const double T = system_lifetime(expr, lifetimes);
    const int m = expr.component_count();
    if (static_cast<std::size_t>(m) > lifetimes.size())
        throw DataError("lifetime vector shorter than component count");
    std::vector<Observation> out(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const double x = lifetimes[static_cast<std::size_t>(j)];
        if (x == T)
            out[j] = {T, T};
        else if (x < T)
            out[j] = {0.0, T};
        else
            out[j] = {T, kInf};
    }
    return out;
}

std::vector<CensoringRow> censoring_table(const std::vector<ComponentDataset>& datasets) {
    if (datasets.empty()) throw DataError("censoring table needs at least one dataset");
    std::vector<CensoringRow> table;
    table.reserve(datasets.size());
    for (const auto& ds : datasets) {
        if (ds.rows.empty()) throw DataError("censoring table met an empty dataset");
        std::size_t left = 0, right = 0, interval = 0;
        for (const auto& obs : ds.rows) {
            switch (kind_of(obs)) {
                case ObsKind::left_censored: ++left; break;
                case ObsKind::right_censored: ++right; break;
                case ObsKind::interval: ++interval; break;
                case ObsKind::exact: break;
            }
        }
        const double n = static_cast<double>(ds.rows.size());
        CensoringRow row;
        row.component_id = ds.component_id;
        row.left_pct = 100.0 * left / n;
        row.right_pct = 100.0 * right / n;
        row.interval_pct = 100.0 * interval / n;
        row.total_pct = row.left_pct + row.right_pct + row.interval_pct;
        table.push_back(row);
    }
    return table;
}

Observation interval_coarsen(double exact_age, double width) {
    if (!(width > 0.0)) throw ConfigError("interval width must be positive");
    if (!(exact_age > 0.0)) throw DataError("age must be positive");
    const double lo = std::floor(exact_age / width) * width;
    return {lo, lo + width};
}

SimulatedSystems simulate_systems(const StructureExpr& expr,
                                  const std::vector<GeneratorParams>& components,
                                  std::size_t n, std::uint64_t seed, Exec exec) {
    const int m = expr.component_count();
    if (static_cast<int>(components.size()) != m)
        throw ConfigError("generator count does not match the structure's components");

    SimulatedSystems sim;
    sim.units.resize(n);
    sim.system_lifetimes.resize(n);

    auto one_unit = [&](std::size_t i) {
        RandomStream rng(derive_seed(seed, {kStreamUnit, i}));
        std::vector<double> lifetimes(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j)
            lifetimes[static_cast<std::size_t>(j)] = sample(components[j], rng);
        sim.units[i] = observe_unit(expr, lifetimes);
        sim.system_lifetimes[i] = system_lifetime(expr, lifetimes);
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            one_unit(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) one_unit(i);
    }
    return sim;
}

std::vector<ComponentDataset> component_datasets(const SimulatedSystems& sim) {
    if (sim.units.empty()) return {};
    const std::size_t m = sim.units.front().size();
    std::vector<ComponentDataset> out(m);
    for (std::size_t j = 0; j < m; ++j) {
        out[j].component_id = static_cast<int>(j) + 1;
        out[j].rows.reserve(sim.units.size());
    }
    for (const auto& unit : sim.units)
        for (std::size_t j = 0; j < m; ++j) out[j].rows.push_back(unit[j]);
    return out;
}

}  // namespace reliab
