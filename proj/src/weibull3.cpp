#include "reliab/weibull3.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "reliab/errors.hpp"

namespace reliab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}  // namespace

double reliability(double x, const WeibullParams& theta) {
    if (x <= theta.mu) return 1.0;
    return std::exp(-std::pow((x - theta.mu) / theta.eta, theta.beta));
}

double cum_hazard(double x, const WeibullParams& theta) {
    if (x <= theta.mu) return 0.0;
    return std::pow((x - theta.mu) / theta.eta, theta.beta);
}

double log_density(double x, const WeibullParams& theta) {
    if (x <= theta.mu) return kNegInf;
    const double y = (x - theta.mu) / theta.eta;
    const double ly = std::log(y);
    return std::log(theta.beta) - std::log(theta.eta) + (theta.beta - 1.0) * ly -
           std::exp(theta.beta * ly);
}

double log_prior(const WeibullParams& theta, const PriorSpec& prior) {
    return -std::log(theta.eta) - prior.b * std::log(theta.beta);
}

double log_likelihood_term(const WeibullParams& theta, const Observation& obs) {
    if (obs.lower == obs.upper) return log_density(obs.lower, theta);
    const double a = cum_hazard(obs.lower, theta);
    if (obs.upper == kInf) return -a;
    const double d = cum_hazard(obs.upper, theta) - a;
    if (d <= 0.0) return kNegInf;
    // log(R(l) - R(u)) = -A + log(1 - e^{-(B-A)})
    return -a + std::log(-std::expm1(-d));
}

double log_likelihood(const WeibullParams& theta, const ComponentDataset& data,
                      Exec exec) {
    if (data.rows.empty()) throw DataError("likelihood needs a nonempty dataset");
    const std::size_t n = data.rows.size();
    std::vector<double> terms(n);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            terms[static_cast<std::size_t>(i)] =
                log_likelihood_term(theta, data.rows[static_cast<std::size_t>(i)]);
    } else {
        for (std::size_t i = 0; i < n; ++i)
            terms[i] = log_likelihood_term(theta, data.rows[i]);
    }
    return pairwise_sum(terms);
}

double log_posterior_kernel(const WeibullParams& theta, const ComponentDataset& data,
                            const PriorSpec& prior, Exec exec) {
    const double ll = log_likelihood(theta, data, exec);
    if (ll == kNegInf) return kNegInf;
    return log_prior(theta, prior) + ll;
}

double mean_lifetime(const WeibullParams& theta) {
    return theta.mu + theta.eta * std::exp(std::lgamma(1.0 + 1.0 / theta.beta));
}

double mu_upper_bound(const ComponentDataset& data) {
    double bound = kInf;
    for (const auto& obs : data.rows) {
        if (obs.lower == obs.upper)
            bound = std::min(bound, obs.lower);
        else if (obs.upper < kInf)
            bound = std::min(bound, obs.upper);
    }
    return bound;
}

namespace {

struct HazardGrad {
    double beta = 0.0, eta = 0.0, mu = 0.0;
};

// Gradient of A(x) = ((x-mu)/eta)^beta; zero when x <= mu.
HazardGrad cum_hazard_gradient(double x, const WeibullParams& theta) {
    if (x <= theta.mu) return {};
    const double a = (x - theta.mu) / theta.eta;
    const double A = std::pow(a, theta.beta);
    return {A * std::log(a), -theta.beta * A / theta.eta,
            -theta.beta * A / (x - theta.mu)};
}

}  // namespace

KernelGradient kernel_gradient(const WeibullParams& theta, const ComponentDataset& data,
                               const PriorSpec& prior) {
    KernelGradient g;
    g.beta = -prior.b / theta.beta;
    g.eta = -1.0 / theta.eta;
    for (const auto& obs : data.rows) {
        if (obs.lower == obs.upper) {
            const double x = obs.lower;
            const double y = (x - theta.mu) / theta.eta;
            const double ly = std::log(y);
            const double z = std::exp(theta.beta * ly);
            g.beta += 1.0 / theta.beta + ly - z * ly;
            g.eta += theta.beta * (z - 1.0) / theta.eta;
            g.mu += (theta.beta * z - theta.beta + 1.0) / (x - theta.mu);
            continue;
        }
        const HazardGrad ga = cum_hazard_gradient(obs.lower, theta);
        if (obs.upper == kInf) {
            g.beta -= ga.beta;
            g.eta -= ga.eta;
            g.mu -= ga.mu;
            continue;
        }
        const HazardGrad gb = cum_hazard_gradient(obs.upper, theta);
        const double d = cum_hazard(obs.upper, theta) - cum_hazard(obs.lower, theta);
        const double mass = -std::expm1(-d);  // 1 - e^{-d}
        const double wa = -1.0 / mass;
        const double wb = std::exp(-d) / mass;
        g.beta += wa * ga.beta + wb * gb.beta;
        g.eta += wa * ga.eta + wb * gb.eta;
        g.mu += wa * ga.mu + wb * gb.mu;
    }
    return g;
}

}  // namespace reliab
