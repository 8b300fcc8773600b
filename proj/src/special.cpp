#include "reliab/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace reliab {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 3.0e-16;
constexpr double kTiny = std::numeric_limits<double>::min() / kEps;

// Lower regularized incomplete gamma by power series, valid for x < a + 1.
double gamma_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw std::runtime_error("reg_gamma: series did not converge");
}

// Upper regularized incomplete gamma by modified Lentz continued fraction,
// valid for x >= a + 1.
double gamma_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) {
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw std::runtime_error("reg_gamma: continued fraction did not converge");
}

}  // namespace

double reg_gamma_lower(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("reg_gamma: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return x < a + 1.0 ? gamma_series(a, x) : 1.0 - gamma_cf(a, x);
}

double reg_gamma_upper(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("reg_gamma: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return x < a + 1.0 ? 1.0 - gamma_series(a, x) : gamma_cf(a, x);
}

double normal_survivor(double z) {
    return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

}  // namespace reliab
