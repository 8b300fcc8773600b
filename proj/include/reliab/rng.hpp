#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace reliab {

// SplitMix64 step, used only to derive child seeds from a master seed so that
// parallel units/chains/replications get independent, reproducible streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Folds a path of indices into a master seed. derive_seed(s, {a, b}) and
// derive_seed(s, {a, c}) are unrelated streams for b != c.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = master;
    std::uint64_t out = splitmix64(s);
    for (std::uint64_t p : path) {
        s = out ^ (p + 0x9e3779b97f4a7c15ULL);
        out = splitmix64(s);
    }
    return out;
}

// Stream-component tags for derive_seed paths.
inline constexpr std::uint64_t kStreamUnit = 1;
inline constexpr std::uint64_t kStreamChain = 2;
inline constexpr std::uint64_t kStreamReplication = 3;
inline constexpr std::uint64_t kStreamFit = 4;
inline constexpr std::uint64_t kStreamCensorTable = 5;

// Seeded uniform/normal stream. mt19937_64 output is fully specified by the
// standard and uniforms are built by explicit bit manipulation, so the draw
// sequence is identical across platforms and compilers for a given seed.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    // Strictly inside (0,1): 53-bit grid offset by half a step.
    double uniform01() {
        const std::uint64_t bits = gen_() >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    // Box-Muller; second variate cached.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 gen_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace reliab
