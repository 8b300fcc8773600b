#include "reliab/summary.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "reliab/errors.hpp"

namespace reliab {

namespace {

std::vector<WeibullParams> pooled_draws(const std::vector<Chain>& chains) {
    std::vector<WeibullParams> pool;
    for (const auto& c : chains) pool.insert(pool.end(), c.draws.begin(), c.draws.end());
    if (pool.empty()) throw DataError("no retained draws to summarize");
    return pool;
}

std::pair<double, double> mean_sd(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    if (v.size() < 2) return {m, 0.0};
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return {m, std::sqrt(s / static_cast<double>(v.size() - 1))};
}

}  // namespace

ReliabilityCurve mean_reliability(const std::vector<Chain>& chains,
                                  const std::vector<double>& grid, Exec exec) {
    if (grid.empty()) throw ConfigError("reliability curve needs a nonempty grid");
    const std::vector<WeibullParams> pool = pooled_draws(chains);
    ReliabilityCurve curve;
    curve.grid = grid;
    curve.mean.resize(grid.size());

    auto one_point = [&](std::size_t g) {
        std::vector<double> values(pool.size());
        for (std::size_t k = 0; k < pool.size(); ++k)
            values[k] = reliability(grid[g], pool[k]);
        curve.mean[g] = pairwise_sum(values) / static_cast<double>(pool.size());
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long g = 0; g < static_cast<long long>(grid.size()); ++g)
            one_point(static_cast<std::size_t>(g));
    } else {
        for (std::size_t g = 0; g < grid.size(); ++g) one_point(g);
    }
    return curve;
}

ReliabilityCurve reliability_curve(const std::vector<Chain>& chains,
                                   const std::vector<double>& grid, double level,
                                   Exec exec) {
    if (grid.empty()) throw ConfigError("reliability curve needs a nonempty grid");
    if (!(level > 0.0 && level < 1.0)) throw ConfigError("HPD level must be in (0,1)");
    const std::vector<WeibullParams> pool = pooled_draws(chains);
    ReliabilityCurve curve;
    curve.level = level;
    curve.grid = grid;
    curve.mean.resize(grid.size());
    curve.hpd_lower.resize(grid.size());
    curve.hpd_upper.resize(grid.size());

    auto one_point = [&](std::size_t g) {
        std::vector<double> values(pool.size());
        for (std::size_t k = 0; k < pool.size(); ++k)
            values[k] = reliability(grid[g], pool[k]);
        curve.mean[g] = pairwise_sum(values) / static_cast<double>(pool.size());
        const auto [lo, hi] = hpd_interval(values, level);
        curve.hpd_lower[g] = lo;
        curve.hpd_upper[g] = hi;
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long g = 0; g < static_cast<long long>(grid.size()); ++g)
            one_point(static_cast<std::size_t>(g));
    } else {
        for (std::size_t g = 0; g < grid.size(); ++g) one_point(g);
    }
    return curve;
}

std::pair<double, double> hpd_interval(std::vector<double> samples, double level) {
    if (samples.size() < 20) throw DataError("HPD interval needs at least 20 samples");
    if (!(level > 0.0 && level < 1.0)) throw ConfigError("HPD level must be in (0,1)");
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    const std::size_t j = static_cast<std::size_t>(
        std::ceil(level * static_cast<double>(n)));
    const std::size_t window = std::min(std::max<std::size_t>(j, 1), n);
    std::size_t best = 0;
    double best_width = samples[window - 1] - samples[0];
    for (std::size_t i = 1; i + window <= n; ++i) {
        const double width = samples[i + window - 1] - samples[i];
        if (width < best_width) {
            best_width = width;
            best = i;
        }
    }
    return {samples[best], samples[best + window - 1]};
}

ParameterSummary parameter_summary(const std::vector<Chain>& chains) {
    const std::vector<WeibullParams> pool = pooled_draws(chains);
    std::vector<double> beta, eta, mu, life;
    beta.reserve(pool.size());
    eta.reserve(pool.size());
    mu.reserve(pool.size());
    life.reserve(pool.size());
    for (const auto& p : pool) {
        beta.push_back(p.beta);
        eta.push_back(p.eta);
        mu.push_back(p.mu);
        life.push_back(mean_lifetime(p));
    }
    ParameterSummary s;
    std::tie(s.beta_mean, s.beta_sd) = mean_sd(beta);
    std::tie(s.eta_mean, s.eta_sd) = mean_sd(eta);
    std::tie(s.mu_mean, s.mu_sd) = mean_sd(mu);
    std::tie(s.lifetime_mean, s.lifetime_sd) = mean_sd(life);
    return s;
}

std::vector<double> default_grid(const std::vector<Chain>& chains) {
    const std::vector<WeibullParams> pool = pooled_draws(chains);
    std::vector<double> life;
    life.reserve(pool.size());
    for (const auto& p : pool) life.push_back(mean_lifetime(p));
    const auto [m, sd] = mean_sd(life);
    (void)m;
    std::sort(life.begin(), life.end());
    const std::size_t n = life.size();
    std::size_t idx = static_cast<std::size_t>(
        std::ceil(0.999 * static_cast<double>(n)));
    idx = std::min(std::max<std::size_t>(idx, 1), n) - 1;
    const double upper = life[idx] + 3.0 * sd;
    std::vector<double> grid(200);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = upper * static_cast<double>(i) / 199.0;
    return grid;
}

}  // namespace reliab
