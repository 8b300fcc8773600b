#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "reliab/errors.hpp"
#include "reliab/weibull3.hpp"
#include "support/testkit.hpp"

using namespace reliab;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("reliability matches the survivor formula and is 1 below the location") {
    const WeibullParams theta{2.0, 10.0, 5.0};
    CHECK(reliability(3.0, theta) == 1.0);
    CHECK(reliability(5.0, theta) == 1.0);
    CHECK(reliability(15.0, theta) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    for (double x : {5.5, 8.0, 20.0, 44.0})
        CHECK(reliability(x, theta) ==
              doctest::Approx(testkit::w3_survivor(x, 2.0, 10.0, 5.0)).epsilon(1e-15));
    CHECK(cum_hazard(15.0, theta) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cum_hazard(4.0, theta) == 0.0);
}

TEST_CASE("log density matches the closed form and integrates to one") {
    const WeibullParams theta{1.6, 7.0, 2.0};
    for (double x : {2.1, 3.0, 9.0, 25.0})
        CHECK(log_density(x, theta) ==
              doctest::Approx(std::log(testkit::w3_density(x, 1.6, 7.0, 2.0))).epsilon(1e-13));
    CHECK(log_density(2.0, theta) == -kInf);
    CHECK(log_density(0.5, theta) == -kInf);
    const double mass = testkit::integrate(
        [&](double x) { return std::exp(log_density(x, theta)); }, 2.0, 120.0, 1e-12);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("likelihood terms per censoring kind") {
    const WeibullParams theta{2.0, 10.0, 1.0};
    CHECK(log_likelihood_term(theta, {6.0, 6.0}) ==
          doctest::Approx(log_density(6.0, theta)).epsilon(1e-15));
    CHECK(log_likelihood_term(theta, {6.0, kInf}) ==
          doctest::Approx(std::log(reliability(6.0, theta))).epsilon(1e-13));
    CHECK(log_likelihood_term(theta, {0.0, 6.0}) ==
          doctest::Approx(std::log(1.0 - reliability(6.0, theta))).epsilon(1e-13));
    CHECK(log_likelihood_term(theta, {4.0, 9.0}) ==
          doctest::Approx(std::log(reliability(4.0, theta) - reliability(9.0, theta)))
              .epsilon(1e-12));
}

TEST_CASE("narrow intervals keep precision through expm1") {
    const WeibullParams theta{2.0, 10.0, 1.0};
    const double t = 6.0, w = 1e-9;
    const double term = log_likelihood_term(theta, {t, t + w});
    CHECK(term == doctest::Approx(log_density(t, theta) + std::log(w)).epsilon(1e-6));
}

TEST_CASE("rows with no mass yield minus infinity, not errors") {
    const WeibullParams theta{2.0, 10.0, 5.0};
    CHECK(log_likelihood_term(theta, {4.0, 4.0}) == -kInf);   // exact below location
    CHECK(log_likelihood_term(theta, {1.0, 3.0}) == -kInf);   // interval below location
    CHECK(log_likelihood_term(theta, {0.0, 5.0}) == -kInf);   // left mass is zero at mu
    CHECK(log_likelihood_term(theta, {4.0, kInf}) == 0.0);    // certain survival
}

TEST_CASE("interval likelihood equals density quadrature on random draws") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> ubeta(0.6, 4.0), ueta(1.0, 25.0),
        umu(0.0, 5.0), ulen(0.05, 10.0), upos(0.01, 3.0);
    for (int i = 0; i < 25; ++i) {
        const WeibullParams theta{ubeta(rng), ueta(rng), umu(rng)};
        const double l = theta.mu + upos(rng);
        const double u = l + ulen(rng);
        const double oracle = testkit::integrate(
            [&](double x) {
                return testkit::w3_density(x, theta.beta, theta.eta, theta.mu);
            },
            l, u, 1e-13);
        const double term = std::exp(log_likelihood_term(theta, {l, u}));
        CHECK(term == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("log_likelihood sums terms and flags empty data") {
    const WeibullParams theta{1.5, 8.0, 0.5};
    ComponentDataset data;
    data.component_id = 1;
    data.rows = {{2.0, 2.0}, {0.0, 3.0}, {4.0, kInf}, {1.0, 5.0}};
    double direct = 0.0;
    for (const auto& obs : data.rows) direct += log_likelihood_term(theta, obs);
    CHECK(log_likelihood(theta, data) == doctest::Approx(direct).epsilon(1e-15));

    ComponentDataset empty;
    empty.component_id = 1;
    CHECK_THROWS_AS((void)log_likelihood(theta, empty), DataError);

    ComponentDataset dead = data;
    dead.rows.push_back({0.2, 0.2});  // below any positive mu only if mu>0.2
    const WeibullParams high_mu{1.5, 8.0, 0.5};
    CHECK(log_likelihood(high_mu, dead) == -kInf);
}

TEST_CASE("prior, kernel and mean lifetime") {
    const WeibullParams theta{2.0, 4.0, 1.0};
    CHECK(log_prior(theta, PriorSpec{1.0}) ==
          doctest::Approx(-std::log(4.0) - std::log(2.0)).epsilon(1e-15));
    CHECK(log_prior(theta, PriorSpec{0.0}) == doctest::Approx(-std::log(4.0)).epsilon(1e-15));
    CHECK(log_prior(theta, PriorSpec{2.0}) ==
          doctest::Approx(-std::log(4.0) - 2.0 * std::log(2.0)).epsilon(1e-15));

    ComponentDataset data;
    data.component_id = 1;
    data.rows = {{2.0, 2.0}, {3.0, kInf}};
    CHECK(log_posterior_kernel(theta, data, PriorSpec{1.0}) ==
          doctest::Approx(log_likelihood(theta, data) + log_prior(theta, PriorSpec{1.0}))
              .epsilon(1e-15));

    CHECK(mean_lifetime({1.0, 3.0, 2.0}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(mean_lifetime({2.0, 10.0, 5.0}) ==
          doctest::Approx(5.0 + 10.0 * std::exp(std::lgamma(1.5))).epsilon(1e-15));
}

TEST_CASE("mu upper bound scans exact and finite censoring endpoints") {
    ComponentDataset data;
    data.component_id = 1;
    data.rows = {{5.0, 5.0}, {0.0, 3.0}, {7.0, kInf}, {4.0, 9.0}};
    CHECK(mu_upper_bound(data) == 3.0);
    data.rows = {{5.0, 5.0}, {7.0, kInf}};
    CHECK(mu_upper_bound(data) == 5.0);
    data.rows = {{5.0, kInf}, {7.0, kInf}};
    CHECK(mu_upper_bound(data) == kInf);
}

TEST_CASE("analytic kernel gradient matches central differences") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ubeta(0.7, 3.5), ueta(2.0, 20.0);
    ComponentDataset data;
    data.component_id = 1;
    data.rows = {{6.0, 6.0}, {4.5, 4.5}, {0.0, 5.0}, {7.0, kInf}, {5.5, 8.0}};
    const PriorSpec prior{1.0};
    for (int i = 0; i < 40; ++i) {
        const WeibullParams theta{ubeta(rng), ueta(rng),
                                  std::uniform_real_distribution<double>(0.1, 4.0)(rng)};
        const KernelGradient g = kernel_gradient(theta, data, prior);
        const auto kernel = [&](const WeibullParams& t) {
            return log_posterior_kernel(t, data, prior);
        };
        const double hb = 1e-6 * theta.beta, he = 1e-6 * theta.eta, hm = 1e-7;
        WeibullParams tb = theta, te = theta, tm = theta;
        tb.beta += hb;
        te.eta += he;
        tm.mu += hm;
        WeibullParams tb2 = theta, te2 = theta, tm2 = theta;
        tb2.beta -= hb;
        te2.eta -= he;
        tm2.mu -= hm;
        CHECK(g.beta ==
              doctest::Approx((kernel(tb) - kernel(tb2)) / (2 * hb)).epsilon(5e-5));
        CHECK(g.eta ==
              doctest::Approx((kernel(te) - kernel(te2)) / (2 * he)).epsilon(5e-5));
        CHECK(g.mu ==
              doctest::Approx((kernel(tm) - kernel(tm2)) / (2 * hm)).epsilon(5e-5));
    }
}
