#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "adlab/norms.hpp"
#include "adlab/rng.hpp"

namespace adlab {

// Small dense row-major matrix. Analyst state dimensions stay single-digit,
// so nothing here tries to be fast.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(std::span<const double> d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    Matrix scaled(double s) const {
        Matrix m = *this;
        for (double& x : m.data) x *= s;
        return m;
    }
};

inline std::vector<double> matvec(const Matrix& m, std::span<const double> v) {
    if (m.cols != v.size()) throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<double> out(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m.cols; ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

inline std::vector<double> add(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline std::vector<double> sub(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline std::vector<double> scale(std::span<const double> a, double s) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
    return out;
}

// Max absolute row sum: the operator norm induced by l_inf.
inline double op_norm_inf(const Matrix& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols; ++j) s += std::abs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

// Max absolute column sum: the operator norm induced by l_1.
inline double op_norm_1(const Matrix& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m.rows; ++i) s += std::abs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

// Spectral norm via power iteration on M^T M; deterministic start vector.
inline double op_norm_2(const Matrix& m, int iters = 200) {
    if (m.rows == 0 || m.cols == 0) return 0.0;
    std::vector<double> v(m.cols, 1.0 / std::sqrt(static_cast<double>(m.cols)));
    double sigma = 0.0;
    for (int it = 0; it < iters; ++it) {
        std::vector<double> mv = matvec(m, v);
        // w = M^T (M v)
        std::vector<double> w(m.cols, 0.0);
        for (std::size_t i = 0; i < m.rows; ++i) {
            for (std::size_t j = 0; j < m.cols; ++j) w[j] += m(i, j) * mv[i];
        }
        const double nw = lp_norm(w, NormSpec::l2());
        if (nw == 0.0) return 0.0;
        for (std::size_t j = 0; j < m.cols; ++j) v[j] = w[j] / nw;
        sigma = std::sqrt(nw);
    }
    return sigma;
}

inline double op_norm(const Matrix& m, const NormSpec& spec) {
    validate_norm(spec);
    if (spec.p == 1) return op_norm_1(m);
    if (spec.p == 2) return op_norm_2(m);
    return op_norm_inf(m);
}

// Random orthogonal matrix from Gram-Schmidt on Gaussian columns.
inline Matrix random_orthogonal(std::size_t n, Rng& rng) {
    Matrix q(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = rng.gauss();
        for (std::size_t prev = 0; prev < col; ++prev) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += v[i] * q(i, prev);
            for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q(i, prev);
        }
        double nv = lp_norm(v, NormSpec::l2());
        if (nv < 1e-12) {
            // Degenerate draw; retry deterministically with a shifted basis vector.
            for (std::size_t i = 0; i < n; ++i) v[i] = (i == col) ? 1.0 : 0.0;
            for (std::size_t prev = 0; prev < col; ++prev) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += v[i] * q(i, prev);
                for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q(i, prev);
            }
            nv = lp_norm(v, NormSpec::l2());
        }
        for (std::size_t i = 0; i < n; ++i) q(i, col) = v[i] / nv;
    }
    return q;
}

}  // namespace adlab
