#pragma once

// Chain post-processing: posterior mean reliability curves, pointwise HPD
// bands, and parameter summaries.

#include <utility>
#include <vector>

#include "reliab/parallel.hpp"
#include "reliab/sampler.hpp"

namespace reliab {

struct ReliabilityCurve {
    std::vector<double> grid;
    std::vector<double> mean;
    std::vector<double> hpd_lower;
    std::vector<double> hpd_upper;
    double level = 0.95;
};

// Arithmetic mean of reliability(t, draw) over all pooled retained draws at
// each grid point; band fields left empty.
ReliabilityCurve mean_reliability(const std::vector<Chain>& chains,
                                  const std::vector<double>& grid,
                                  Exec exec = Exec::serial);

// Mean curve plus the pointwise HPD band of the per-draw reliabilities.
ReliabilityCurve reliability_curve(const std::vector<Chain>& chains,
                                   const std::vector<double>& grid, double level,
                                   Exec exec = Exec::serial);

// Shortest interval containing ceil(level * n) sorted samples (sliding
// window over order statistics; ties keep the lowest start). Needs >= 20
// samples.
std::pair<double, double> hpd_interval(std::vector<double> samples, double level);

struct ParameterSummary {
    double beta_mean = 0.0, beta_sd = 0.0;
    double eta_mean = 0.0, eta_sd = 0.0;
    double mu_mean = 0.0, mu_sd = 0.0;
    double lifetime_mean = 0.0, lifetime_sd = 0.0;  // of mu + eta*Gamma(1+1/beta)
};

ParameterSummary parameter_summary(const std::vector<Chain>& chains);

// 200 equally spaced points from 0 to the pooled 0.999 quantile of the
// per-draw mean lifetime plus 3 posterior SDs.
std::vector<double> default_grid(const std::vector<Chain>& chains);

}  // namespace reliab
