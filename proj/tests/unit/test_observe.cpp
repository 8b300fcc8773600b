#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "reliab/errors.hpp"
#include "reliab/observe.hpp"
#include "reliab/structure.hpp"

using namespace reliab;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("kind_of classifies the four encodings") {
    CHECK(kind_of({7.0, 7.0}) == ObsKind::exact);
    CHECK(kind_of({0.0, 7.0}) == ObsKind::left_censored);
    CHECK(kind_of({7.0, kInf}) == ObsKind::right_censored);
    CHECK(kind_of({3.0, 7.0}) == ObsKind::interval);
}

TEST_CASE("series failure: causal component exact, survivors right-censored") {
    const auto obs = observe_unit(parse_structure("series(c1,c2)"), std::vector<double>{3.0, 8.0});
    REQUIRE(obs.size() == 2);
    CHECK(obs[0].lower == 3.0);
    CHECK(obs[0].upper == 3.0);
    CHECK(obs[1].lower == 3.0);
    CHECK(obs[1].upper == kInf);
}

TEST_CASE("parallel failure: causal component exact, earlier deaths left-censored") {
    const auto obs = observe_unit(parse_structure("parallel(c1,c2)"), std::vector<double>{3.0, 8.0});
    REQUIRE(obs.size() == 2);
    CHECK(obs[0].lower == 0.0);
    CHECK(obs[0].upper == 8.0);
    CHECK(obs[1].lower == 8.0);
    CHECK(obs[1].upper == 8.0);
}

TEST_CASE("2-of-3 failure: one of each censoring side") {
    const auto obs = observe_unit(two_of_three(), std::vector<double>{2.0, 5.0, 9.0});
    CHECK(kind_of(obs[0]) == ObsKind::left_censored);
    CHECK(obs[0].upper == 5.0);
    CHECK(kind_of(obs[1]) == ObsKind::exact);
    CHECK(obs[1].lower == 5.0);
    CHECK(kind_of(obs[2]) == ObsKind::right_censored);
    CHECK(obs[2].lower == 5.0);
}

TEST_CASE("components tied with the system lifetime are all exact") {
    const auto obs = observe_unit(two_of_three(), std::vector<double>{5.0, 5.0, 9.0});
    CHECK(kind_of(obs[0]) == ObsKind::exact);
    CHECK(kind_of(obs[1]) == ObsKind::exact);
    CHECK(kind_of(obs[2]) == ObsKind::right_censored);
}

TEST_CASE("every observation bound equals the unit's system lifetime") {
    const StructureExpr expr = bridge();
    const std::vector<GeneratorParams> comps{
        Weibull2Params{2.2, 17.0}, LognormalParams{2.7, 0.3}, LognormalParams{2.6, 0.25},
        GammaParams{37.5, 0.4}, GammaParams{33.3, 0.6}};
    const auto sim = simulate_systems(expr, comps, 400, 12345);
    REQUIRE(sim.units.size() == 400);
    for (std::size_t i = 0; i < sim.units.size(); ++i) {
        const double t = sim.system_lifetimes[i];
        CHECK(t > 0.0);
        int exact_rows = 0;
        for (const auto& obs : sim.units[i]) {
            switch (kind_of(obs)) {
                case ObsKind::exact:
                    CHECK(obs.lower == t);
                    ++exact_rows;
                    break;
                case ObsKind::left_censored: CHECK(obs.upper == t); break;
                case ObsKind::right_censored: CHECK(obs.lower == t); break;
                case ObsKind::interval: FAIL("simulation produced an interval row"); break;
            }
        }
        CHECK(exact_rows >= 1);
    }
}

TEST_CASE("simulation is deterministic and unit streams do not depend on n") {
    const StructureExpr expr = two_of_three();
    const std::vector<GeneratorParams> comps{Weibull2Params{2.0, 12.0},
                                             GammaParams{27.0, 2.0 / 3.0},
                                             LognormalParams{3.0, 0.15}};
    const auto a = simulate_systems(expr, comps, 50, 9);
    const auto b = simulate_systems(expr, comps, 50, 9);
    CHECK(a.system_lifetimes == b.system_lifetimes);
    const auto c = simulate_systems(expr, comps, 10, 9);
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(a.system_lifetimes[i] == c.system_lifetimes[i]);
    const auto d = simulate_systems(expr, comps, 50, 10);
    CHECK(a.system_lifetimes != d.system_lifetimes);
}

TEST_CASE("component_datasets reshapes units into per-component rows") {
    const StructureExpr expr = two_of_three();
    const std::vector<GeneratorParams> comps{Weibull2Params{2.0, 12.0},
                                             GammaParams{20.0, 1.0},
                                             LognormalParams{3.0, 0.15}};
    const auto sim = simulate_systems(expr, comps, 25, 4);
    const auto datasets = component_datasets(sim);
    REQUIRE(datasets.size() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(datasets[j].component_id == static_cast<int>(j + 1));
        REQUIRE(datasets[j].rows.size() == 25);
        for (std::size_t i = 0; i < 25; ++i) {
            CHECK(datasets[j].rows[i].lower == sim.units[i][j].lower);
            CHECK(datasets[j].rows[i].upper == sim.units[i][j].upper);
        }
    }
}

TEST_CASE("censoring table percentages on a hand-built dataset") {
    std::vector<ComponentDataset> datasets(2);
    datasets[0].component_id = 1;
    datasets[0].rows = {{1, 1}, {0, 2}, {3, kInf}, {0, 4}, {5, 5}};
    datasets[1].component_id = 2;
    datasets[1].rows = {{1, 2}, {2, 3}, {4, 4}, {9, 9}};
    const auto table = censoring_table(datasets);
    REQUIRE(table.size() == 2);
    CHECK(table[0].left_pct == doctest::Approx(40.0));
    CHECK(table[0].right_pct == doctest::Approx(20.0));
    CHECK(table[0].interval_pct == doctest::Approx(0.0));
    CHECK(table[0].total_pct == doctest::Approx(60.0));
    CHECK(table[1].interval_pct == doctest::Approx(50.0));
    CHECK(table[1].total_pct == doctest::Approx(50.0));
}

TEST_CASE("interval_coarsen bins exact ages") {
    const Observation a = interval_coarsen(13.4, 1.0);
    CHECK(a.lower == 13.0);
    CHECK(a.upper == 14.0);
    const Observation b = interval_coarsen(13.0, 1.0);
    CHECK(b.lower == 13.0);
    CHECK(b.upper == 14.0);
    const Observation c = interval_coarsen(7.3, 0.5);
    CHECK(c.lower == 7.0);
    CHECK(c.upper == 7.5);
}
