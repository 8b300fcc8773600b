#include "reliab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "reliab/distributions.hpp"
#include "reliab/errors.hpp"

namespace reliab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

void validate(const SamplerConfig& cfg) {
    if (cfg.total <= 0 || cfg.burnin < 0 || cfg.burnin >= cfg.total)
        throw ConfigError("sampler needs 0 <= burnin < total");
    if (cfg.thin < 1) throw ConfigError("thinning must be >= 1");
    if ((cfg.total - cfg.burnin) / cfg.thin < 1)
        throw ConfigError("no draws retained: total - burnin < thinning");
    if (cfg.adapt_start < 1) throw ConfigError("adaptation start must be >= 1");
    if (!(cfg.jitter > 0.0)) throw ConfigError("proposal jitter must be positive");
    if (cfg.chains < 1) throw ConfigError("chain count must be >= 1");
}

// Running mean and sum of outer products of deviations (Welford).
struct RunningCov {
    long long n = 0;
    Vec3 mean{};
    Mat3 m2{};

    void add(const Vec3& x) {
        ++n;
        Vec3 d;
        for (int k = 0; k < 3; ++k) d[k] = x[k] - mean[k];
        for (int k = 0; k < 3; ++k) mean[k] += d[k] / static_cast<double>(n);
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) m2[j][k] += d[j] * (x[k] - mean[k]);
    }

    Mat3 cov() const {
        Mat3 c{};
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                c[j][k] = m2[j][k] / static_cast<double>(n - 1);
        return c;
    }
};

// Lower-triangular Cholesky factor; the caller guarantees a jittered SPD
// input, but the jitter is escalated if rounding still breaks it.
bool cholesky(const Mat3& a, Mat3& l) {
    l = Mat3{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = a[i][j];
            for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
            if (i == j) {
                if (!(s > 0.0)) return false;
                l[i][j] = std::sqrt(s);
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    return true;
}

Mat3 proposal_chol(const RunningCov& rc, double jitter) {
    Mat3 a = rc.cov();
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) a[j][k] *= kProposalScale;
        a[j][j] += kProposalScale * jitter;
    }
    Mat3 l;
    double extra = jitter;
    while (!cholesky(a, l)) {
        extra *= 10.0;
        for (int j = 0; j < 3; ++j) a[j][j] += kProposalScale * extra;
    }
    return l;
}

double softplus(double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }

}  // namespace

AdaptiveRwResult run_adaptive_rw(
    const std::function<double(const std::array<double, 3>&)>& log_target,
    const std::array<double, 3>& z_start, const SamplerConfig& cfg, RandomStream& rng) {
    validate(cfg);
    AdaptiveRwResult out;
    const int retained = (cfg.total - cfg.burnin) / cfg.thin;
    out.draws.reserve(static_cast<std::size_t>(retained));
    out.log_targets.reserve(static_cast<std::size_t>(retained));

    Vec3 z = z_start;
    double lp = log_target(z);
    RunningCov rc;
    rc.add(z);

    Mat3 warm{};
    for (int k = 0; k < 3; ++k) warm[k][k] = 0.1;

    long long accepted_post = 0;
    for (int i = 1; i <= cfg.total; ++i) {
        const Mat3 l = (i <= cfg.adapt_start || rc.n < 3)
                           ? warm
                           : proposal_chol(rc, cfg.jitter);
        Vec3 noise{rng.normal(), rng.normal(), rng.normal()};
        Vec3 cand = z;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c <= r; ++c) cand[r] += l[r][c] * noise[c];

        const double lp_cand = log_target(cand);
        const double u = rng.uniform01();
        if (std::log(u) < lp_cand - lp) {
            z = cand;
            lp = lp_cand;
            if (i > cfg.burnin) ++accepted_post;
        }
        rc.add(z);
        if (i > cfg.burnin && (i - cfg.burnin) % cfg.thin == 0) {
            out.draws.push_back(z);
            out.log_targets.push_back(lp);
        }
    }
    out.acceptance_rate =
        static_cast<double>(accepted_post) / static_cast<double>(cfg.total - cfg.burnin);
    return out;
}

WeibullParams initial_point(const ComponentDataset& data) {
    if (data.rows.empty()) throw DataError("initial point needs a nonempty dataset");
    std::vector<double> pseudo;
    pseudo.reserve(data.rows.size());
    bool informative = false;
    for (const auto& obs : data.rows) {
        switch (kind_of(obs)) {
            case ObsKind::exact: pseudo.push_back(obs.lower); informative = true; break;
            case ObsKind::interval:
                pseudo.push_back(0.5 * (obs.lower + obs.upper));
                informative = true;
                break;
            case ObsKind::left_censored:
                pseudo.push_back(0.5 * obs.upper);
                informative = true;
                break;
            case ObsKind::right_censored: pseudo.push_back(obs.lower); break;
        }
    }
    if (!informative)
        throw DataError("all rows right-censored: nothing anchors the location");

    const double mu0 = 0.9 * *std::min_element(pseudo.begin(), pseudo.end());
    double mean = 0.0;
    for (double t : pseudo) mean += t - mu0;
    mean /= static_cast<double>(pseudo.size());
    double var = 0.0;
    for (double t : pseudo) var += (t - mu0 - mean) * (t - mu0 - mean);
    var = pseudo.size() > 1 ? var / static_cast<double>(pseudo.size() - 1) : 0.0;

    if (var <= 0.0) return {1.0, mean, mu0};
    try {
        const Weibull2Params w = solve_weibull2(mean, var);
        return {w.beta, w.eta, mu0};
    } catch (const SolveError&) {
        return {1.0, mean, mu0};
    }
}

double split_rhat(const std::vector<std::vector<double>>& chain_values) {
    std::vector<std::pair<double, double>> halves;  // (mean, variance)
    std::size_t h = std::numeric_limits<std::size_t>::max();
    for (const auto& c : chain_values) h = std::min(h, c.size() / 2);
    if (chain_values.empty() || h < 2)
        throw DataError("split R-hat needs chains of length >= 4");

    auto summarize = [&](const double* p) {
        double m = 0.0;
        for (std::size_t i = 0; i < h; ++i) m += p[i];
        m /= static_cast<double>(h);
        double v = 0.0;
        for (std::size_t i = 0; i < h; ++i) v += (p[i] - m) * (p[i] - m);
        v /= static_cast<double>(h - 1);
        halves.emplace_back(m, v);
    };
    for (const auto& c : chain_values) {
        summarize(c.data());
        summarize(c.data() + (c.size() - h));
    }

    const double m_count = static_cast<double>(halves.size());
    double grand = 0.0;
    for (const auto& [m, v] : halves) grand += m;
    grand /= m_count;
    double b = 0.0, w = 0.0;
    for (const auto& [m, v] : halves) {
        b += (m - grand) * (m - grand);
        w += v;
    }
    b *= static_cast<double>(h) / (m_count - 1.0);
    w /= m_count;
    if (w == 0.0) return b == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    const double n = static_cast<double>(h);
    return std::sqrt(((n - 1.0) / n * w + b / n) / w);
}

FitResult fit(const ComponentDataset& data, const PriorSpec& prior,
              const SamplerConfig& config, Exec exec) {
    validate(config);
    if (data.rows.size() < 2)
        throw DataError("fit needs at least two observations");
    bool anchored = false;
    for (const auto& obs : data.rows) {
        const ObsKind k = kind_of(obs);
        if (k == ObsKind::exact || k == ObsKind::interval) anchored = true;
    }
    if (!anchored)
        throw DataError("fit needs at least one exact or interval observation");

    const double mu_max = mu_upper_bound(data);
    const WeibullParams init = initial_point(data);

    auto to_params = [mu_max](const Vec3& z) {
        const double sig = 1.0 / (1.0 + std::exp(-z[2]));
        return WeibullParams{std::exp(z[0]), std::exp(z[1]), mu_max * sig};
    };
    auto log_jacobian = [](const Vec3& z) {
        return z[0] + z[1] - softplus(z[2]) - softplus(-z[2]);
    };
    auto log_target = [&](const Vec3& z) {
        for (double v : z)
            if (!(std::abs(v) < 600.0)) return kNegInf;
        return log_posterior_kernel(to_params(z), data, prior) + log_jacobian(z);
    };

    const Vec3 z_init{std::log(init.beta), std::log(init.eta),
                      std::log(init.mu / (mu_max - init.mu))};

    FitResult result;
    result.initial = init;
    result.mu_max = mu_max;
    result.chains.resize(static_cast<std::size_t>(config.chains));

    auto run_chain = [&](int c) {
        const std::uint64_t seed =
            derive_seed(config.seed, {kStreamChain, static_cast<std::uint64_t>(c)});
        RandomStream rng(seed);
        Vec3 z_start{};
        bool found = false;
        for (int attempt = 0; attempt < 1000 && !found; ++attempt) {
            for (int k = 0; k < 3; ++k) z_start[k] = z_init[k] + 0.5 * rng.normal();
            found = std::isfinite(log_target(z_start));
        }
        if (!found)
            throw SamplerInitError("no finite-kernel start found in 1,000 attempts");
        const AdaptiveRwResult raw = run_adaptive_rw(log_target, z_start, config, rng);
        Chain& chain = result.chains[static_cast<std::size_t>(c)];
        chain.seed = seed;
        chain.acceptance_rate = raw.acceptance_rate;
        chain.draws.reserve(raw.draws.size());
        chain.log_kernels.reserve(raw.draws.size());
        for (std::size_t i = 0; i < raw.draws.size(); ++i) {
            chain.draws.push_back(to_params(raw.draws[i]));
            chain.log_kernels.push_back(raw.log_targets[i] - log_jacobian(raw.draws[i]));
        }
    };

    if (exec == Exec::parallel) {
        std::vector<std::exception_ptr> errors(
            static_cast<std::size_t>(config.chains));
#pragma omp parallel for schedule(static)
        for (int c = 0; c < config.chains; ++c) {
            try {
                run_chain(c);
            } catch (...) {
                errors[static_cast<std::size_t>(c)] = std::current_exception();
            }
        }
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    } else {
        for (int c = 0; c < config.chains; ++c) run_chain(c);
    }

    auto collect = [&](auto member) {
        std::vector<std::vector<double>> per_chain;
        per_chain.reserve(result.chains.size());
        for (const auto& chain : result.chains) {
            std::vector<double> v;
            v.reserve(chain.draws.size());
            for (const auto& d : chain.draws) v.push_back(member(d));
            per_chain.push_back(std::move(v));
        }
        return per_chain;
    };
    if ((config.total - config.burnin) / config.thin >= 4) {
        result.diagnostics.rhat_beta =
            split_rhat(collect([](const WeibullParams& p) { return p.beta; }));
        result.diagnostics.rhat_eta =
            split_rhat(collect([](const WeibullParams& p) { return p.eta; }));
        result.diagnostics.rhat_mu =
            split_rhat(collect([](const WeibullParams& p) { return p.mu; }));
        result.diagnostics.converged = result.diagnostics.rhat_beta < kRhatThreshold &&
                                       result.diagnostics.rhat_eta < kRhatThreshold &&
                                       result.diagnostics.rhat_mu < kRhatThreshold;
    } else {
        result.diagnostics.rhat_beta = result.diagnostics.rhat_eta =
            result.diagnostics.rhat_mu = std::numeric_limits<double>::quiet_NaN();
        result.diagnostics.converged = false;
    }
    return result;
}

}  // namespace reliab
