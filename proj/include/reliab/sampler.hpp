#pragma once

// Adaptive random-walk Metropolis sampler.
//
// The generic core walks a 3-D log-target with a multivariate normal
// proposal whose covariance, after a warm-up of fixed-scale steps, tracks
// the running sample covariance of the chain (scaled by 2.38^2/3, plus a
// small jitter to stay positive definite). Adaptation never stops.
//
// The Weibull fit runs that core on the transformed coordinates
// z = (log beta, log eta, logit(mu/mu_max)), where the posterior support is
// all of R^3, adding the transform's log-Jacobian to the kernel.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "reliab/parallel.hpp"
#include "reliab/rng.hpp"
#include "reliab/weibull3.hpp"

namespace reliab {

struct SamplerConfig {
    int total = 20000;
    int burnin = 10000;
    int thin = 10;
    int adapt_start = 1000;
    double jitter = 1e-6;
    std::uint64_t seed = 0;
    int chains = 3;
};

inline constexpr double kProposalScale = 2.38 * 2.38 / 3.0;
inline constexpr double kRhatThreshold = 1.05;

struct AdaptiveRwResult {
    std::vector<std::array<double, 3>> draws;  // retained points
    std::vector<double> log_targets;
    double acceptance_rate = 0.0;  // post-burn-in fraction
};

// Core walker; cfg.seed and cfg.chains are ignored here (the caller owns the
// stream). log_target(z0_start) must be finite.
AdaptiveRwResult run_adaptive_rw(
    const std::function<double(const std::array<double, 3>&)>& log_target,
    const std::array<double, 3>& z_start, const SamplerConfig& cfg, RandomStream& rng);

struct Chain {
    std::vector<WeibullParams> draws;
    std::vector<double> log_kernels;  // posterior kernel at each retained draw
    double acceptance_rate = 0.0;
    std::uint64_t seed = 0;
};

struct FitDiagnostics {
    double rhat_beta = 0.0;
    double rhat_eta = 0.0;
    double rhat_mu = 0.0;
    bool converged = false;  // all split R-hat < kRhatThreshold
};

struct FitResult {
    std::vector<Chain> chains;
    FitDiagnostics diagnostics;
    WeibullParams initial;
    double mu_max = 0.0;
};

// Moment-based start: pseudo-complete times (exact -> l, interval midpoint,
// left -> u/2, right -> l), mu = 0.9 * min pseudo-time, then a two-parameter
// Weibull moment match on the shifted times. Throws DataError when every row
// is right-censored.
WeibullParams initial_point(const ComponentDataset& data);

// Split R-hat over per-chain scalar sequences (each chain halved, BDA style).
double split_rhat(const std::vector<std::vector<double>>& chain_values);

// Runs config.chains adaptive walkers with overdispersed starts and seeds
// derived from config.seed. Throws SamplerInitError when a chain cannot find
// a finite-kernel start in 1,000 attempts. Exec::parallel runs chains
// concurrently; results are identical either way.
FitResult fit(const ComponentDataset& data, const PriorSpec& prior,
              const SamplerConfig& config, Exec exec = Exec::serial);

}  // namespace reliab
