#include "reliab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "reliab/errors.hpp"
#include "reliab/quadrature.hpp"
#include "reliab/special.hpp"

namespace reliab {

namespace {

// Guarded Newton on an increasing function with a valid bracket
// (f(lo) <= 0 <= f(hi)). Falls back to bisection whenever the Newton
// candidate leaves the bracket or f/df are unusable.
template <class F, class DF>
double refine_root(F&& f, DF&& df, double lo, double hi, double tol) {
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if (fx < 0.0)
            lo = x;
        else
            hi = x;
        if (hi - lo <= tol) return 0.5 * (lo + hi);
        const double d = df(x);
        bool newton = std::isfinite(fx) && std::isfinite(d) && d > 0.0;
        double next;
        if (newton) {
            next = x - fx / d;
            if (!(next > lo && next < hi)) {
                next = 0.5 * (lo + hi);
                newton = false;
            }
        } else {
            next = 0.5 * (lo + hi);
        }
        if (newton && std::abs(next - x) <= tol) return next;
        x = next;
    }
    return 0.5 * (lo + hi);
}

// log of the squared coefficient of variation of weibull2 as a function of
// the shape: log(Gamma(1+2/b)/Gamma(1+1/b)^2). Strictly decreasing in b.
double weibull2_log_cv2p1(double beta) {
    return std::lgamma(1.0 + 2.0 / beta) - 2.0 * std::lgamma(1.0 + 1.0 / beta);
}

double mw_log_hazard(const ModifiedWeibullParams& p, double t) {
    return std::log(p.a) + p.b * std::log(t) + p.lambda * t;
}

double mw_survivor(const ModifiedWeibullParams& p, double t) {
    if (t <= 0.0) return 1.0;
    const double lh = mw_log_hazard(p, t);
    if (lh > 710.0) return 0.0;
    return std::exp(-std::exp(lh));
}

double mw_upper_limit(const ModifiedWeibullParams& p) {
    double t = 1.0;
    for (int i = 0; i < 2100 && mw_log_hazard(p, t) < std::log(45.0); ++i) t *= 2.0;
    return t;
}

int mw_panels(const ModifiedWeibullParams& p) {
    return 4 + static_cast<int>(p.b / 2.0);
}

double mw_mean(const ModifiedWeibullParams& p) {
    const double hi = mw_upper_limit(p);
    return integrate_zero_to([&](double t) { return mw_survivor(p, t); }, hi, 48,
                             mw_panels(p));
}

double mw_second_moment(const ModifiedWeibullParams& p) {
    const double hi = mw_upper_limit(p);
    return integrate_zero_to([&](double t) { return 2.0 * t * mw_survivor(p, t); }, hi,
                             48, mw_panels(p));
}

// mean is strictly decreasing in a for fixed (b, lambda); solve on log a.
double mw_solve_a(double b, double lambda, double target_mean) {
    auto mean_at = [&](double log_a) {
        return mw_mean({std::exp(log_a), b, lambda});
    };
    double lo = 0.0, hi = 0.0, step = 1.0;
    for (int i = 0; i < 64 && mean_at(lo) < target_mean; ++i) {
        lo -= step;
        step *= 2.0;
    }
    step = 1.0;
    for (int i = 0; i < 64 && mean_at(hi) > target_mean; ++i) {
        hi += step;
        step *= 2.0;
    }
    if (!(mean_at(lo) >= target_mean && mean_at(hi) <= target_mean))
        throw SolveError("modified_weibull: scale bracket expansion failed");
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mean_at(mid) > target_mean ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ModifiedWeibullParams solve_modified_weibull(double mean, double variance, double lambda) {
    // Inner loop pins a to the mean, outer bisection moves b to the variance.
    // Variance at matched mean decreases as b grows.
    auto variance_at = [&](double b) {
        const double a = std::exp(mw_solve_a(b, lambda, mean));
        ModifiedWeibullParams p{a, b, lambda};
        const double m = mw_mean(p);
        return mw_second_moment(p) - m * m;
    };
    double lo = 0.05, hi = 50.0;
    for (int i = 0; i < 8 && variance_at(lo) < variance; ++i) lo *= 0.5;
    for (int i = 0; i < 8 && variance_at(hi) > variance; ++i) hi *= 2.0;
    if (!(variance_at(lo) >= variance && variance_at(hi) <= variance))
        throw SolveError("modified_weibull: no shape matches the target variance");
    for (int it = 0; it < 80 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (variance_at(mid) > variance ? lo : hi) = mid;
    }
    const double b = 0.5 * (lo + hi);
    return {std::exp(mw_solve_a(b, lambda, mean)), b, lambda};
}

double invert_gamma_survivor(const GammaParams& p, double u) {
    // Solve Q(shape, x) = u in s = log x, then t = scale * x.
    auto f = [&](double s) { return u - reg_gamma_upper(p.shape, std::exp(s)); };
    auto df = [&](double s) {
        return std::exp(p.shape * s - std::exp(s) - std::lgamma(p.shape));
    };
    double lo = std::log(p.shape), hi = lo, step = 2.0;
    for (int i = 0; i < 64 && f(lo) > 0.0; ++i) {
        lo -= step;
        step *= 2.0;
    }
    step = 2.0;
    for (int i = 0; i < 64 && f(hi) < 0.0; ++i) {
        hi += step;
        step *= 2.0;
    }
    return p.scale * std::exp(refine_root(f, df, lo, hi, 1e-13));
}

double invert_normal_survivor(double u) {
    auto f = [&](double z) { return u - normal_survivor(z); };
    auto df = [&](double z) {
        return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    };
    double lo = -10.0, hi = 10.0;
    while (f(lo) > 0.0) lo *= 2.0;
    while (f(hi) < 0.0) hi *= 2.0;
    return refine_root(f, df, lo, hi, 1e-14);
}

double invert_mw_survivor(const ModifiedWeibullParams& p, double u) {
    const double y = -std::log(u);
    if (y <= 0.0) return 0.0;
    // Solve log a + b s + lambda e^s = log y in s = log t; increasing in s.
    const double target = std::log(y);
    auto f = [&](double s) { return std::log(p.a) + p.b * s + p.lambda * std::exp(s) - target; };
    auto df = [&](double s) { return p.b + p.lambda * std::exp(s); };
    double lo = (target - std::log(p.a)) / p.b, hi = lo, step = 1.0;
    for (int i = 0; i < 64 && f(lo) > 0.0; ++i) {
        lo -= step;
        step *= 2.0;
    }
    step = 1.0;
    for (int i = 0; i < 64 && f(hi) < 0.0; ++i) {
        hi += step;
        step *= 2.0;
    }
    return std::exp(refine_root(f, df, lo, hi, 1e-12));
}

void check_moment_targets(const GeneratorSpec& spec) {
    if (!(spec.target_mean > 0.0)) throw ConfigError("target mean must be positive");
    if (!(spec.target_variance > 0.0))
        throw ConfigError("target variance must be positive");
}

}  // namespace

Family family_from_string(std::string_view name) {
    if (name == "weibull2") return Family::weibull2;
    if (name == "weibull3") return Family::weibull3;
    if (name == "gamma") return Family::gamma;
    if (name == "lognormal") return Family::lognormal;
    if (name == "modified_weibull") return Family::modified_weibull;
    throw ConfigError("unknown generator family '" + std::string(name) + "'");
}

std::string_view family_name(Family family) {
    switch (family) {
        case Family::weibull2: return "weibull2";
        case Family::weibull3: return "weibull3";
        case Family::gamma: return "gamma";
        case Family::lognormal: return "lognormal";
        case Family::modified_weibull: return "modified_weibull";
    }
    return "?";
}

Family family_of(const GeneratorParams& params) {
    return std::visit(
        [](const auto& p) -> Family {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Weibull2Params>) return Family::weibull2;
            if constexpr (std::is_same_v<T, Weibull3Params>) return Family::weibull3;
            if constexpr (std::is_same_v<T, GammaParams>) return Family::gamma;
            if constexpr (std::is_same_v<T, LognormalParams>) return Family::lognormal;
            if constexpr (std::is_same_v<T, ModifiedWeibullParams>)
                return Family::modified_weibull;
        },
        params);
}

Weibull2Params solve_weibull2(double mean, double variance) {
    const double target = std::log1p(variance / (mean * mean));
    double lo = 0.05, hi = 50.0;
    // log CV^2 is decreasing in the shape; expand geometrically if the
    // default bracket misses.
    for (int i = 0; i < 8 && weibull2_log_cv2p1(lo) < target; ++i) lo *= 0.5;
    for (int i = 0; i < 8 && weibull2_log_cv2p1(hi) > target; ++i) hi *= 2.0;
    if (!(weibull2_log_cv2p1(lo) >= target && weibull2_log_cv2p1(hi) <= target))
        throw SolveError("weibull2: no shape matches the target mean/variance");
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (weibull2_log_cv2p1(mid) > target ? lo : hi) = mid;
    }
    const double beta = 0.5 * (lo + hi);
    const double eta = std::exp(std::log(mean) - std::lgamma(1.0 + 1.0 / beta));
    return {beta, eta};
}

GeneratorParams solve_params(const GeneratorSpec& spec) {
    check_moment_targets(spec);
    switch (spec.family) {
        case Family::weibull2: {
            auto [beta, eta] = solve_weibull2(spec.target_mean, spec.target_variance);
            return Weibull2Params{beta, eta};
        }
        case Family::weibull3: {
            const double mu = spec.fixed.value_or(kDefaultWeibull3Location);
            if (mu < 0.0) throw ConfigError("weibull3 location must be >= 0");
            if (spec.target_mean <= mu)
                throw SolveError("weibull3: target mean does not exceed the fixed location");
            auto [beta, eta] = solve_weibull2(spec.target_mean - mu, spec.target_variance);
            return Weibull3Params{beta, eta, mu};
        }
        case Family::gamma: {
            const double shape = spec.target_mean * spec.target_mean / spec.target_variance;
            const double scale = spec.target_variance / spec.target_mean;
            return GammaParams{shape, scale};
        }
        case Family::lognormal: {
            const double s2 =
                std::log1p(spec.target_variance / (spec.target_mean * spec.target_mean));
            return LognormalParams{std::log(spec.target_mean) - 0.5 * s2, std::sqrt(s2)};
        }
        case Family::modified_weibull: {
            const double lambda = spec.fixed.value_or(kDefaultModifiedWeibullLambda);
            if (lambda < 0.0) throw ConfigError("modified_weibull lambda must be >= 0");
            return solve_modified_weibull(spec.target_mean, spec.target_variance, lambda);
        }
    }
    throw ConfigError("unhandled generator family");
}

double survivor(const GeneratorParams& params, double t) {
    return std::visit(
        [t](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Weibull2Params>) {
                if (t <= 0.0) return 1.0;
                return std::exp(-std::pow(t / p.eta, p.beta));
            } else if constexpr (std::is_same_v<T, Weibull3Params>) {
                if (t <= p.mu) return 1.0;
                return std::exp(-std::pow((t - p.mu) / p.eta, p.beta));
            } else if constexpr (std::is_same_v<T, GammaParams>) {
                if (t <= 0.0) return 1.0;
                return reg_gamma_upper(p.shape, t / p.scale);
            } else if constexpr (std::is_same_v<T, LognormalParams>) {
                if (t <= 0.0) return 1.0;
                return normal_survivor((std::log(t) - p.meanlog) / p.sdlog);
            } else {
                return mw_survivor(p, t);
            }
        },
        params);
}

double theoretical_mean(const GeneratorParams& params) {
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Weibull2Params>) {
                return p.eta * std::exp(std::lgamma(1.0 + 1.0 / p.beta));
            } else if constexpr (std::is_same_v<T, Weibull3Params>) {
                return p.mu + p.eta * std::exp(std::lgamma(1.0 + 1.0 / p.beta));
            } else if constexpr (std::is_same_v<T, GammaParams>) {
                return p.shape * p.scale;
            } else if constexpr (std::is_same_v<T, LognormalParams>) {
                return std::exp(p.meanlog + 0.5 * p.sdlog * p.sdlog);
            } else {
                return mw_mean(p);
            }
        },
        params);
}

double theoretical_variance(const GeneratorParams& params) {
    return std::visit(
        [](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Weibull2Params> ||
                          std::is_same_v<T, Weibull3Params>) {
                const double g1 = std::exp(std::lgamma(1.0 + 1.0 / p.beta));
                const double g2 = std::exp(std::lgamma(1.0 + 2.0 / p.beta));
                return p.eta * p.eta * (g2 - g1 * g1);
            } else if constexpr (std::is_same_v<T, GammaParams>) {
                return p.shape * p.scale * p.scale;
            } else if constexpr (std::is_same_v<T, LognormalParams>) {
                const double m = std::exp(p.meanlog + 0.5 * p.sdlog * p.sdlog);
                return std::expm1(p.sdlog * p.sdlog) * m * m;
            } else {
                const double m = mw_mean(p);
                return mw_second_moment(p) - m * m;
            }
        },
        params);
}

double invert_survivor(const GeneratorParams& params, double u) {
    if (!(u > 0.0 && u <= 1.0)) throw ConfigError("survivor inverse needs u in (0,1]");
    if (u == 1.0) return 0.0;
    return std::visit(
        [u](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Weibull2Params>) {
                return p.eta * std::pow(-std::log(u), 1.0 / p.beta);
            } else if constexpr (std::is_same_v<T, Weibull3Params>) {
                return p.mu + p.eta * std::pow(-std::log(u), 1.0 / p.beta);
            } else if constexpr (std::is_same_v<T, GammaParams>) {
                return invert_gamma_survivor(p, u);
            } else if constexpr (std::is_same_v<T, LognormalParams>) {
                return std::exp(p.meanlog + p.sdlog * invert_normal_survivor(u));
            } else {
                return invert_mw_survivor(p, u);
            }
        },
        params);
}

double sample(const GeneratorParams& params, RandomStream& rng) {
    return invert_survivor(params, rng.uniform01());
}

std::vector<double> sample(const GeneratorParams& params, RandomStream& rng,
                           std::size_t count) {
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(sample(params, rng));
    return out;
}

}  // namespace reliab
