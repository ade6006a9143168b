#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "adlab/norms.hpp"

namespace adlab {

// Nearest integer with ties (exact .5) resolved toward the even integer.
inline std::int64_t round_half_even(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("round_half_even: non-finite input");
    const double f = std::floor(x);
    const double frac = x - f;
    auto lo = static_cast<std::int64_t>(f);
    if (frac > 0.5) return lo + 1;
    if (frac < 0.5) return lo;
    return (lo % 2 == 0) ? lo : lo + 1;
}

// A point on the Delta-resolution grid. Coordinates are stored as exact
// integer multiples of the resolution; equality is integer comparison and two
// unequal states with shared resolution are at least Delta apart in every
// l_p norm.
struct GridState {
    std::vector<std::int64_t> coords;
    double resolution = 0.0;

    GridState() = default;
    GridState(std::vector<std::int64_t> k, double delta)
        : coords(std::move(k)), resolution(delta) {
        if (!(resolution > 0.0)) throw std::invalid_argument("GridState: resolution must be > 0");
    }

    static GridState zero(std::size_t dim, double delta) {
        return GridState(std::vector<std::int64_t>(dim, 0), delta);
    }

    std::size_t dim() const { return coords.size(); }

    std::vector<double> values() const {
        std::vector<double> v(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i) {
            v[i] = static_cast<double>(coords[i]) * resolution;
        }
        return v;
    }

    friend bool operator==(const GridState& a, const GridState& b) {
        return a.resolution == b.resolution && a.coords == b.coords;
    }
    friend bool operator!=(const GridState& a, const GridState& b) { return !(a == b); }
};

// Nearest grid point, coordinate-wise; |result_i - v_i| <= Delta/2.
inline GridState quantize(std::span<const double> v, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("quantize: resolution must be > 0");
    std::vector<std::int64_t> k(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) throw std::invalid_argument("quantize: non-finite coordinate");
        k[i] = round_half_even(v[i] / delta);
    }
    return GridState(std::move(k), delta);
}

inline GridState quantize(const std::vector<double>& v, double delta) {
    return quantize(std::span<const double>(v), delta);
}

// Distance computed on the integer coordinates, scaled once by the resolution.
inline double lp_distance(const GridState& a, const GridState& b, const NormSpec& spec) {
    if (a.dim() != b.dim()) throw std::invalid_argument("lp_distance: dimension mismatch");
    if (a.resolution != b.resolution) {
        throw std::invalid_argument("lp_distance: resolution mismatch");
    }
    validate_norm(spec);
    double acc = 0.0;
    if (spec.p == 1) {
        for (std::size_t i = 0; i < a.dim(); ++i) {
            acc += std::abs(static_cast<double>(a.coords[i] - b.coords[i]));
        }
        return acc * a.resolution;
    }
    if (spec.p == 2) {
        for (std::size_t i = 0; i < a.dim(); ++i) {
            const double d = static_cast<double>(a.coords[i] - b.coords[i]);
            acc += d * d;
        }
        return std::sqrt(acc) * a.resolution;
    }
    for (std::size_t i = 0; i < a.dim(); ++i) {
        acc = std::max(acc, std::abs(static_cast<double>(a.coords[i] - b.coords[i])));
    }
    return acc * a.resolution;
}

}  // namespace adlab
