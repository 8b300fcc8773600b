#pragma once

// Censored observations derived from system-level monitoring.
//
// When a system fails at T, the component that caused the failure is seen
// exactly at T, components already dead are left-censored at T, and
// survivors are right-censored at T. Encoding: (t,t) exact, (0,t) left,
// (t,inf) right, 0 < l < u < inf interval.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "reliab/distributions.hpp"
#include "reliab/parallel.hpp"
#include "reliab/structure.hpp"

namespace reliab {

struct Observation {
    double lower = 0.0;
    double upper = 0.0;
};

enum class ObsKind { exact, left_censored, right_censored, interval };

ObsKind kind_of(const Observation& obs);

struct ComponentDataset {
    int component_id = 0;
    std::vector<Observation> rows;
};

// One observation per component, indexed by component id - 1. Components
// tied with the system lifetime are all recorded exact.
std::vector<Observation> observe_unit(const StructureExpr& expr,
                                      std::span<const double> lifetimes);

struct CensoringRow {
    int component_id = 0;
    double left_pct = 0.0;
    double right_pct = 0.0;
    double interval_pct = 0.0;
    double total_pct = 0.0;  // left + right + interval
};

std::vector<CensoringRow> censoring_table(const std::vector<ComponentDataset>& datasets);

// Bins an exactly known age into its width-sized interval:
// (floor(age/width)*width, same + width).
Observation interval_coarsen(double exact_age, double width);

struct SimulatedSystems {
    // units[i][j]: observation of component j+1 in unit i.
    std::vector<std::vector<Observation>> units;
    std::vector<double> system_lifetimes;
};

// Draws component lifetimes for n independent systems and observes each.
// Unit i uses the stream derived from (seed, unit, i), so results do not
// depend on the execution policy or thread count.
SimulatedSystems simulate_systems(const StructureExpr& expr,
                                  const std::vector<GeneratorParams>& components,
                                  std::size_t n, std::uint64_t seed,
                                  Exec exec = Exec::parallel);

std::vector<ComponentDataset> component_datasets(const SimulatedSystems& sim);

}  // namespace reliab
