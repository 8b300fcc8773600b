#pragma once

#include <cstddef>
#include <span>

namespace reliab {

// Execution policy for the data-parallel kernels. Every kernel has a serial
// reference path; the parallel path must produce bit-identical results for
// any thread count (independent per-slot writes + fixed-shape reductions).
enum class Exec { serial, parallel };

// Summation over a fixed-shape pairwise tree. The tree depends only on the
// length, so the result is a pure function of the contents regardless of how
// the values were produced.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 32) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace reliab
