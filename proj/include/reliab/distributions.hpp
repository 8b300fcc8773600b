#pragma once

// Component-lifetime generators.
//
// Each generator family is specified by a target mean and variance; the
// two-moment system is solved for the family parameters (closed form where
// one exists, otherwise bracketed root-finding). Three-parameter families
// are underdetermined by two moments, so their extra parameter is fixed:
// weibull3 fixes the location (default 1.0), modified_weibull fixes the
// tail acceleration lambda (default 0.1). Both can be overridden per spec.
//
// Sampling is inverse-survivor throughout and consumes exactly one uniform
// per draw, so stream consumption is independent of the family mix.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "reliab/rng.hpp"

namespace reliab {

enum class Family { weibull2, weibull3, gamma, lognormal, modified_weibull };

Family family_from_string(std::string_view name);  // ConfigError on unknown name
std::string_view family_name(Family family);

inline constexpr double kDefaultWeibull3Location = 1.0;
inline constexpr double kDefaultModifiedWeibullLambda = 0.1;

struct GeneratorSpec {
    Family family = Family::weibull2;
    double target_mean = 0.0;
    double target_variance = 0.0;
    // weibull3: location mu; modified_weibull: lambda. Ignored otherwise.
    std::optional<double> fixed;
};

struct Weibull2Params {
    double beta, eta;
};
struct Weibull3Params {
    double beta, eta, mu;
};
struct GammaParams {
    double shape, scale;
};
struct LognormalParams {
    double meanlog, sdlog;
};
// Survivor exp(-a t^b e^{lambda t}).
struct ModifiedWeibullParams {
    double a, b, lambda;
};

using GeneratorParams = std::variant<Weibull2Params, Weibull3Params, GammaParams,
                                     LognormalParams, ModifiedWeibullParams>;

Family family_of(const GeneratorParams& params);

// Moment matching. Throws SolveError when the moment system is infeasible
// for the family or root-finding fails to converge.
GeneratorParams solve_params(const GeneratorSpec& spec);

// Shape solving eta*Gamma(1+1/beta)=mean, eta^2*[Gamma(1+2/beta)-Gamma(1+1/beta)^2]=variance.
Weibull2Params solve_weibull2(double mean, double variance);

double survivor(const GeneratorParams& params, double t);
double theoretical_mean(const GeneratorParams& params);
double theoretical_variance(const GeneratorParams& params);

// The t with survivor(t) = u, for u in (0, 1]. Closed form for the Weibull
// families; bracketed bisection with Newton polish for the rest (absolute
// tolerance 1e-10 tightened to relative 1e-12 for large t).
double invert_survivor(const GeneratorParams& params, double u);

double sample(const GeneratorParams& params, RandomStream& rng);
std::vector<double> sample(const GeneratorParams& params, RandomStream& rng,
                           std::size_t count);

}  // namespace reliab
