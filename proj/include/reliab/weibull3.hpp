#pragma once

// Three-parameter Weibull model: reliability, censored-data likelihood,
// the 1/(eta beta^b) prior class, and the posterior kernel the sampler
// explores. All log-domain; -infinity is the zero-mass signal, never an
// error.

#include "reliab/observe.hpp"
#include "reliab/parallel.hpp"

namespace reliab {

struct WeibullParams {
    double beta = 1.0;  // shape
    double eta = 1.0;   // scale
    double mu = 0.0;    // location; 0 is the two-parameter special case
};

struct PriorSpec {
    double b = 1.0;  // prior exponent in 1/(eta beta^b)
};

// exp(-((x-mu)/eta)^beta) for x > mu, exactly 1 for x <= mu.
double reliability(double x, const WeibullParams& theta);

// ((x-mu)/eta)^beta for x > mu, 0 otherwise.
double cum_hazard(double x, const WeibullParams& theta);

// Log density; -infinity for x <= mu.
double log_density(double x, const WeibullParams& theta);

// -log eta - b log beta (unnormalized).
double log_prior(const WeibullParams& theta, const PriorSpec& prior);

// Exact row: log density at l. Censored row: log(R(l) - R(u)) computed via
// expm1 on the cumulative-hazard difference so narrow intervals do not
// cancel. -infinity when the row carries no mass under theta.
double log_likelihood_term(const WeibullParams& theta, const Observation& obs);

double log_likelihood(const WeibullParams& theta, const ComponentDataset& data,
                      Exec exec = Exec::serial);

double log_posterior_kernel(const WeibullParams& theta, const ComponentDataset& data,
                            const PriorSpec& prior, Exec exec = Exec::serial);

// mu + eta * Gamma(1 + 1/beta).
double mean_lifetime(const WeibullParams& theta);

// Largest mu with positive likelihood: min over exact rows' l and finite
// non-exact rows' u. +infinity when every row is right-censored.
double mu_upper_bound(const ComponentDataset& data);

struct KernelGradient {
    double beta = 0.0;
    double eta = 0.0;
    double mu = 0.0;
};

// Analytic gradient of log_posterior_kernel, defined wherever the kernel is
// finite and no observation time coincides with mu.
KernelGradient kernel_gradient(const WeibullParams& theta, const ComponentDataset& data,
                               const PriorSpec& prior);

}  // namespace reliab
