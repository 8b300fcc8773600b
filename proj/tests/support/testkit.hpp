#pragma once

// Reference implementations used only by the tests. Everything here is
// written independently of the library code paths it checks: quadrature is
// adaptive Simpson (the library uses Gauss-Legendre), system lifetimes come
// from a failure-time sweep over an independently evaluated boolean tree,
// and HPD intervals come from an all-pairs scan.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "reliab/structure.hpp"

namespace testkit {

inline double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double simpson_rec(const std::function<double(double)>& f, double a, double b,
                          double fa, double fm, double fb, double whole, double tol,
                          int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double both = left + right;
    if (depth <= 0 || std::abs(both - whole) <= 15.0 * tol)
        return both + (both - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson integral of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-11) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    return simpson_rec(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 52);
}

// Boolean structure evaluation written directly from the node definitions.
inline bool works(const reliab::StructureExpr& e, const std::vector<bool>& state) {
    using reliab::NodeKind;
    switch (e.kind) {
        case NodeKind::component:
            return state[static_cast<std::size_t>(e.component_id - 1)];
        case NodeKind::series: {
            for (const auto& c : e.children)
                if (!works(c, state)) return false;
            return true;
        }
        case NodeKind::parallel: {
            for (const auto& c : e.children)
                if (works(c, state)) return true;
            return false;
        }
        case NodeKind::k_of_n: {
            int up = 0;
            for (const auto& c : e.children)
                if (works(c, state)) ++up;
            return up >= e.k;
        }
    }
    return false;
}

// Failure-time sweep: kill components in lifetime order and report the time
// at which the boolean structure first evaluates to failed.
inline double sweep_lifetime(const reliab::StructureExpr& e,
                             const std::vector<double>& lifetimes) {
    std::vector<double> times = lifetimes;
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    for (double t : times) {
        std::vector<bool> alive(lifetimes.size());
        for (std::size_t i = 0; i < lifetimes.size(); ++i) alive[i] = lifetimes[i] > t;
        if (!works(e, alive)) return t;
    }
    return times.back();
}

// Random structure tree; leaves may repeat component ids.
inline reliab::StructureExpr random_structure(std::mt19937& rng, int components,
                                              int depth) {
    std::uniform_int_distribution<int> id(1, components);
    if (depth <= 0) return reliab::component(id(rng));
    std::uniform_int_distribution<int> kind(0, 3);
    const int which = kind(rng);
    if (which == 0) return reliab::component(id(rng));
    std::uniform_int_distribution<int> arity(2, 4);
    const int n = arity(rng);
    std::vector<reliab::StructureExpr> children;
    children.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        children.push_back(random_structure(rng, components, depth - 1));
    if (which == 1) return reliab::series(std::move(children));
    if (which == 2) return reliab::parallel(std::move(children));
    std::uniform_int_distribution<int> kk(1, n);
    return reliab::k_of_n(kk(rng), std::move(children));
}

// Shortest interval covering at least ceil(level*n) samples, all-pairs scan.
inline std::pair<double, double> hpd_scan(std::vector<double> s, double level) {
    std::sort(s.begin(), s.end());
    const std::size_t n = s.size();
    const std::size_t need =
        static_cast<std::size_t>(std::ceil(level * static_cast<double>(n)));
    std::pair<double, double> best{s.front(), s.back()};
    double best_width = s.back() - s.front();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + need - 1; j < n; ++j) {
            const double width = s[j] - s[i];
            if (width < best_width) {
                best_width = width;
                best = {s[i], s[j]};
            }
        }
    return best;
}

// Three-parameter Weibull density/survivor written from the formulas.
inline double w3_density(double x, double beta, double eta, double mu) {
    if (x <= mu) return 0.0;
    const double y = (x - mu) / eta;
    return beta / eta * std::pow(y, beta - 1.0) * std::exp(-std::pow(y, beta));
}

inline double w3_survivor(double x, double beta, double eta, double mu) {
    if (x <= mu) return 1.0;
    return std::exp(-std::pow((x - mu) / eta, beta));
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sd_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// Scratch directory removed on destruction.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               (tag + "-" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace testkit
