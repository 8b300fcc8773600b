#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <random>
#include <vector>

#include "reliab/observe.hpp"
#include "reliab/parallel.hpp"
#include "reliab/sampler.hpp"
#include "reliab/summary.hpp"
#include "reliab/weibull3.hpp"

using namespace reliab;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

ComponentDataset mixed_dataset(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> t(0.5, 30.0);
    ComponentDataset data;
    data.component_id = 1;
    for (int i = 0; i < n; ++i) {
        const double x = t(rng);
        switch (i % 4) {
            case 0: data.rows.push_back({x, x}); break;
            case 1: data.rows.push_back({0.0, x}); break;
            case 2: data.rows.push_back({x, std::numeric_limits<double>::infinity()}); break;
            default: data.rows.push_back({x, x + 1.5}); break;
        }
    }
    return data;
}

}  // namespace

TEST_CASE("pairwise_sum matches long-double accumulation") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(10001);
    long double ref = 0.0L;
    for (auto& x : v) {
        x = u(rng);
        ref += x;
    }
    CHECK(pairwise_sum(v) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
    CHECK(pairwise_sum(std::vector<double>{4.5}) == 4.5);
}

TEST_CASE("pairwise_sum is a pure function of the contents") {
    std::vector<double> v(4097, 0.1);
    const double once = pairwise_sum(v);
    std::vector<double> w(v.rbegin(), v.rend());
    CHECK(same_bits(once, pairwise_sum(w)));
}

TEST_CASE("log_likelihood identical across execution modes") {
    const auto data = mixed_dataset(999, 11);
    const WeibullParams theta{1.8, 12.0, 0.3};
    CHECK(same_bits(log_likelihood(theta, data, Exec::serial),
                    log_likelihood(theta, data, Exec::parallel)));
}

TEST_CASE("simulate_systems identical across execution modes") {
    const StructureExpr expr = two_of_three();
    const std::vector<GeneratorParams> comps{Weibull2Params{2.0, 10.0},
                                             GammaParams{4.0, 2.5},
                                             LognormalParams{2.0, 0.4}};
    const auto s = simulate_systems(expr, comps, 500, 77, Exec::serial);
    const auto p = simulate_systems(expr, comps, 500, 77, Exec::parallel);
    REQUIRE(s.system_lifetimes.size() == p.system_lifetimes.size());
    for (std::size_t i = 0; i < s.system_lifetimes.size(); ++i) {
        CHECK(same_bits(s.system_lifetimes[i], p.system_lifetimes[i]));
        for (std::size_t j = 0; j < s.units[i].size(); ++j) {
            CHECK(same_bits(s.units[i][j].lower, p.units[i][j].lower));
            CHECK(same_bits(s.units[i][j].upper, p.units[i][j].upper));
        }
    }
}

TEST_CASE("fit identical across execution modes") {
    const auto data = mixed_dataset(60, 5);
    SamplerConfig cfg;
    cfg.total = 1200;
    cfg.burnin = 600;
    cfg.thin = 3;
    cfg.seed = 21;
    const auto s = fit(data, PriorSpec{}, cfg, Exec::serial);
    const auto p = fit(data, PriorSpec{}, cfg, Exec::parallel);
    REQUIRE(s.chains.size() == p.chains.size());
    for (std::size_t c = 0; c < s.chains.size(); ++c) {
        REQUIRE(s.chains[c].draws.size() == p.chains[c].draws.size());
        for (std::size_t k = 0; k < s.chains[c].draws.size(); ++k) {
            CHECK(same_bits(s.chains[c].draws[k].beta, p.chains[c].draws[k].beta));
            CHECK(same_bits(s.chains[c].draws[k].eta, p.chains[c].draws[k].eta));
            CHECK(same_bits(s.chains[c].draws[k].mu, p.chains[c].draws[k].mu));
            CHECK(same_bits(s.chains[c].log_kernels[k], p.chains[c].log_kernels[k]));
        }
        CHECK(s.chains[c].acceptance_rate == p.chains[c].acceptance_rate);
    }
    CHECK(same_bits(s.diagnostics.rhat_beta, p.diagnostics.rhat_beta));
}

TEST_CASE("mean_reliability identical across execution modes") {
    const auto data = mixed_dataset(40, 9);
    SamplerConfig cfg;
    cfg.total = 800;
    cfg.burnin = 400;
    cfg.thin = 2;
    cfg.seed = 3;
    const auto result = fit(data, PriorSpec{}, cfg);
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(0.35 * i);
    const auto s = mean_reliability(result.chains, grid, Exec::serial);
    const auto p = mean_reliability(result.chains, grid, Exec::parallel);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(same_bits(s.mean[i], p.mean[i]));
    const auto cs = reliability_curve(result.chains, grid, 0.95, Exec::serial);
    const auto cp = reliability_curve(result.chains, grid, 0.95, Exec::parallel);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(same_bits(cs.hpd_lower[i], cp.hpd_lower[i]));
        CHECK(same_bits(cs.hpd_upper[i], cp.hpd_upper[i]));
    }
}
