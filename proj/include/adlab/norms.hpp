#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace adlab {

// Selects the l_p norm used in contraction statements. Only p in {1, 2, inf}
// is supported; p = 0 encodes infinity.
struct NormSpec {
    static constexpr int kInf = 0;

    int p = 2;

    static NormSpec l1() { return NormSpec{1}; }
    static NormSpec l2() { return NormSpec{2}; }
    static NormSpec linf() { return NormSpec{kInf}; }

    bool is_inf() const { return p == kInf; }
};

inline void validate_norm(const NormSpec& spec) {
    if (spec.p != 1 && spec.p != 2 && spec.p != NormSpec::kInf) {
        throw std::invalid_argument("NormSpec: p must be 1, 2 or inf");
    }
}

// Norm of the d_q-dimensional all-ones vector: d_q (p=1), sqrt(d_q) (p=2), 1 (p=inf).
inline double ones_norm(std::size_t d_q, const NormSpec& spec) {
    if (d_q < 1) throw std::invalid_argument("ones_norm: d_q must be >= 1");
    validate_norm(spec);
    if (spec.p == 1) return static_cast<double>(d_q);
    if (spec.p == 2) return std::sqrt(static_cast<double>(d_q));
    return 1.0;
}

inline double lp_norm(std::span<const double> v, const NormSpec& spec) {
    validate_norm(spec);
    double acc = 0.0;
    if (spec.p == 1) {
        for (double x : v) acc += std::abs(x);
        return acc;
    }
    if (spec.p == 2) {
        for (double x : v) acc += x * x;
        return std::sqrt(acc);
    }
    for (double x : v) acc = std::max(acc, std::abs(x));
    return acc;
}

inline double lp_distance(std::span<const double> x, std::span<const double> y,
                          const NormSpec& spec) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("lp_distance: dimension mismatch");
    }
    validate_norm(spec);
    double acc = 0.0;
    if (spec.p == 1) {
        for (std::size_t i = 0; i < x.size(); ++i) acc += std::abs(x[i] - y[i]);
        return acc;
    }
    if (spec.p == 2) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = x[i] - y[i];
            acc += d * d;
        }
        return std::sqrt(acc);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc = std::max(acc, std::abs(x[i] - y[i]));
    }
    return acc;
}

inline double linf_distance(std::span<const double> x, std::span<const double> y) {
    return lp_distance(x, y, NormSpec::linf());
}

}  // namespace adlab
