#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace reliab {

// 16-point Gauss-Legendre rule on [-1,1]; positive half, mirrored in use.
inline constexpr std::array<double, 8> kGl16Nodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
inline constexpr std::array<double, 8> kGl16Weights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <class F>
double gl16_panel(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        const double dx = half * kGl16Nodes[i];
        s += kGl16Weights[i] * (f(mid - dx) + f(mid + dx));
    }
    return s * half;
}

template <class F>
double integrate_composite(F&& f, double a, double b, int panels) {
    const double w = (b - a) / panels;
    double s = 0.0;
    for (int p = 0; p < panels; ++p) s += gl16_panel(f, a + p * w, a + (p + 1) * w);
    return s;
}

// Integral over [0, upper] with geometric refinement toward 0, for integrands
// like t^b near the origin. Truncation below upper*2^-octaves is absorbed by
// one closing panel on [0, lo].
template <class F>
double integrate_zero_to(F&& f, double upper, int octaves = 48, int panels_per_octave = 4) {
    double s = 0.0;
    double hi = upper;
    for (int o = 0; o < octaves; ++o) {
        const double lo = hi * 0.5;
        s += integrate_composite(f, lo, hi, panels_per_octave);
        hi = lo;
    }
    s += gl16_panel(f, 0.0, hi);
    return s;
}

}  // namespace reliab
