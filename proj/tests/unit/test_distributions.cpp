#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "reliab/distributions.hpp"
#include "reliab/errors.hpp"
#include "support/testkit.hpp"

using namespace reliab;

namespace {

// The six study scenarios' generator specs, flattened.
std::vector<GeneratorSpec> study_specs() {
    return {
        {Family::weibull2, 15, 8, {}},          {Family::gamma, 18, 12, {}},
        {Family::lognormal, 20, 10, {}},        {Family::lognormal, 4, 7, {}},
        {Family::modified_weibull, 2.88, 12.44, {}}, {Family::weibull3, 5, 3, {}},
        {Family::weibull2, 10, 2, {}},          {Family::weibull2, 11, 10, {}},
        {Family::weibull2, 10, 8, {}},          {Family::modified_weibull, 1.6, 6, {}},
        {Family::modified_weibull, 2.4, 4, {}}, {Family::modified_weibull, 2.9, 13, {}},
        {Family::weibull2, 17, 8, {}},          {Family::lognormal, 16, 22, {}},
        {Family::lognormal, 15, 15, {}},        {Family::gamma, 15, 6, {}},
        {Family::gamma, 20, 12, {}},            {Family::weibull2, 4, 15, {}},
        {Family::modified_weibull, 5.6, 15, {}},{Family::lognormal, 6, 7, {}},
        {Family::gamma, 5, 8, {}},              {Family::weibull3, 4, 8, {}},
    };
}

}  // namespace

TEST_CASE("family names round-trip and reject unknowns") {
    for (Family f : {Family::weibull2, Family::weibull3, Family::gamma,
                     Family::lognormal, Family::modified_weibull})
        CHECK(family_from_string(family_name(f)) == f);
    CHECK_THROWS_AS((void)family_from_string("weibull"), ConfigError);
}

TEST_CASE("weibull2 moment solve recovers known parameters") {
    const double g15 = std::exp(std::lgamma(1.5));
    const double mean = 10.0 * g15;
    const double var = 100.0 * (1.0 - g15 * g15);
    const Weibull2Params p = solve_weibull2(mean, var);
    CHECK(p.beta == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(p.eta == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("gamma and lognormal solves match their closed forms") {
    const GeneratorParams g = solve_params({Family::gamma, 18, 12, {}});
    const auto& gp = std::get<GammaParams>(g);
    CHECK(gp.shape == doctest::Approx(18.0 * 18.0 / 12.0).epsilon(1e-12));
    CHECK(gp.scale == doctest::Approx(12.0 / 18.0).epsilon(1e-12));

    const GeneratorParams l = solve_params({Family::lognormal, 20, 10, {}});
    const auto& lp = std::get<LognormalParams>(l);
    const double s2 = std::log1p(10.0 / 400.0);
    CHECK(lp.sdlog == doctest::Approx(std::sqrt(s2)).epsilon(1e-12));
    CHECK(lp.meanlog == doctest::Approx(std::log(20.0) - 0.5 * s2).epsilon(1e-12));
}

TEST_CASE("weibull3 solve fixes the location and shifts the moments") {
    const GeneratorParams p = solve_params({Family::weibull3, 5, 3, {}});
    const auto& wp = std::get<Weibull3Params>(p);
    CHECK(wp.mu == kDefaultWeibull3Location);
    const Weibull2Params shifted = solve_weibull2(4.0, 3.0);
    CHECK(wp.beta == doctest::Approx(shifted.beta).epsilon(1e-12));
    CHECK(wp.eta == doctest::Approx(shifted.eta).epsilon(1e-12));

    const GeneratorParams q = solve_params({Family::weibull3, 5, 3, 2.5});
    CHECK(std::get<Weibull3Params>(q).mu == 2.5);
}

TEST_CASE("every study generator hits its target moments to 1e-8") {
    for (const auto& spec : study_specs()) {
        INFO(family_name(spec.family) << " mean " << spec.target_mean);
        const GeneratorParams p = solve_params(spec);
        CHECK(theoretical_mean(p) ==
              doctest::Approx(spec.target_mean).epsilon(1e-8));
        CHECK(theoretical_variance(p) ==
              doctest::Approx(spec.target_variance).epsilon(1e-8));
    }
}

TEST_CASE("modified weibull survivor and moments match direct formulas") {
    const GeneratorParams p = solve_params({Family::modified_weibull, 2.88, 12.44, {}});
    const auto& mp = std::get<ModifiedWeibullParams>(p);
    CHECK(mp.lambda == kDefaultModifiedWeibullLambda);
    for (double t : {0.1, 1.0, 3.0, 8.0}) {
        const double direct =
            std::exp(-mp.a * std::pow(t, mp.b) * std::exp(mp.lambda * t));
        CHECK(survivor(p, t) == doctest::Approx(direct).epsilon(1e-13));
    }
    double upper = 1.0;
    while (survivor(p, upper) > 1e-15) upper *= 2.0;
    const double mean_oracle =
        testkit::integrate([&](double t) { return survivor(p, t); }, 0.0, upper, 1e-12);
    CHECK(theoretical_mean(p) == doctest::Approx(mean_oracle).epsilon(1e-7));
    const double second_oracle = testkit::integrate(
        [&](double t) { return 2.0 * t * survivor(p, t); }, 0.0, upper, 1e-12);
    CHECK(theoretical_variance(p) ==
          doctest::Approx(second_oracle - mean_oracle * mean_oracle).epsilon(1e-6));

    const GeneratorParams fixed = solve_params({Family::modified_weibull, 2.88, 5.0, 0.3});
    CHECK(std::get<ModifiedWeibullParams>(fixed).lambda == 0.3);
    CHECK(theoretical_mean(fixed) == doctest::Approx(2.88).epsilon(1e-8));
    CHECK(theoretical_variance(fixed) == doctest::Approx(5.0).epsilon(1e-8));
}

TEST_CASE("infeasible moment systems raise SolveError") {
    CHECK_THROWS_AS((void)solve_params({Family::modified_weibull, 5, 1e-9, {}}),
                    SolveError);
    CHECK_THROWS_AS((void)solve_params({Family::weibull3, 5, 3, 7.0}), SolveError);
    CHECK_THROWS_AS((void)solve_params({Family::gamma, -1, 2, {}}), ConfigError);
    CHECK_THROWS_AS((void)solve_params({Family::gamma, 1, 0, {}}), ConfigError);
}

TEST_CASE("survivor starts at 1 and decreases") {
    for (const auto& spec : study_specs()) {
        const GeneratorParams p = solve_params(spec);
        CHECK(survivor(p, 0.0) == 1.0);
        double prev = 1.0;
        for (double t = 0.5; t < 40.0; t += 0.5) {
            const double s = survivor(p, t);
            CHECK(s <= prev + 1e-15);
            CHECK(s >= 0.0);
            prev = s;
        }
    }
}

TEST_CASE("invert_survivor inverts the survivor on all families") {
    for (const auto& spec : study_specs()) {
        const GeneratorParams p = solve_params(spec);
        for (double u : {0.999, 0.9, 0.5, 0.1, 0.005, 1e-4}) {
            const double t = invert_survivor(p, u);
            INFO(family_name(spec.family) << " u=" << u);
            CHECK(survivor(p, t) == doctest::Approx(u).epsilon(1e-8));
            CHECK(std::abs(survivor(p, t) - u) < 1e-9);
        }
        CHECK(invert_survivor(p, 1.0) == 0.0);
    }
    CHECK_THROWS_AS((void)invert_survivor(GeneratorParams(Weibull2Params{2, 3}), 0.0),
                    ConfigError);
    CHECK_THROWS_AS((void)invert_survivor(GeneratorParams(Weibull2Params{2, 3}), 1.5),
                    ConfigError);
}

TEST_CASE("sampling consumes exactly one uniform per draw") {
    for (const auto& spec : {GeneratorSpec{Family::weibull2, 15, 8, {}},
                             GeneratorSpec{Family::gamma, 18, 12, {}},
                             GeneratorSpec{Family::lognormal, 4, 7, {}},
                             GeneratorSpec{Family::modified_weibull, 2.88, 12.44, {}},
                             GeneratorSpec{Family::weibull3, 5, 3, {}}}) {
        const GeneratorParams p = solve_params(spec);
        RandomStream a(31), b(31);
        for (int i = 0; i < 50; ++i) {
            const double x = sample(p, a);
            const double u = b.uniform01();
            CHECK(x == invert_survivor(p, u));
        }
        RandomStream c(8), d(8);
        const auto batch = sample(p, c, 20);
        for (double x : batch) CHECK(x == sample(p, d));
    }
}

TEST_CASE("empirical moments of 200k draws match the targets") {
    for (const auto& spec : {GeneratorSpec{Family::weibull2, 15, 8, {}},
                             GeneratorSpec{Family::gamma, 18, 12, {}},
                             GeneratorSpec{Family::lognormal, 20, 10, {}},
                             GeneratorSpec{Family::modified_weibull, 2.4, 4, {}},
                             GeneratorSpec{Family::weibull3, 5, 3, {}}}) {
        const GeneratorParams p = solve_params(spec);
        RandomStream rng(1234);
        const std::size_t n = 200000;
        const auto draws = sample(p, rng, n);
        const double m = testkit::mean_of(draws);
        const double sd = testkit::sd_of(draws);
        const double se = sd / std::sqrt(static_cast<double>(n));
        INFO(family_name(spec.family));
        CHECK(std::abs(m - spec.target_mean) < 5.0 * se);
        CHECK(sd * sd == doctest::Approx(spec.target_variance).epsilon(0.05));
        CHECK(*std::min_element(draws.begin(), draws.end()) > 0.0);
    }
}
