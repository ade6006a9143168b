#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>

namespace adlab {

// Explicitly seeded generator. The engine (mt19937_64) is bit-stable across
// platforms; the distributions below are hand-rolled so whole-run replay is
// deterministic (standard-library distributions are implementation-defined).
// gauss() consumes exactly two engine draws per call.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]; safe as a log argument.
    double uniform01_open() {
        return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller.
    double gauss() {
        const double u1 = uniform01_open();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double gauss(double sigma) { return sigma * gauss(); }

    bool bernoulli(double p) { return uniform01() < p; }

    // Uniform integer in [lo, hi] by rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(eng_());  // full 64-bit range
        const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % span);
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

    // Derives an independent stream for a labeled sub-task (dataset draw,
    // mechanism noise, ...) from one experiment seed.
    static std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
        // splitmix64 over the combined word
        std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace adlab
