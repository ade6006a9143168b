#pragma once

#include <span>
#include <vector>

#include "adlab/linalg.hpp"
#include "adlab/query.hpp"
#include "adlab/schedule.hpp"

namespace adlab {

enum class LossKind { Quadratic, LogisticL2, CustomSmooth };

// Per-sample losses with declared smoothness beta and strong convexity mu.
//  Quadratic:    l(h;x) = 1/2 (h-x)' H (h-x), eigenvalues of H in [mu, beta].
//  LogisticL2:   l(h;(f,y)) = log(1+exp(-y h'f)) + reg/2 ||h||^2.
//  CustomSmooth: l(h;x) = sum_j g(h_j - x_j), g'(u) = mu u + (beta-mu) tanh(u).
struct LossSpec {
    LossKind kind = LossKind::Quadratic;
    double beta = 1.0;
    double mu = 1.0;
    double reg = 0.0;
    Matrix hessian;  // quadratic only; identity if empty

    void validate(std::size_t dim) const;
};

std::vector<double> loss_gradient(const LossSpec& loss, std::span<const double> h,
                                  const DataPoint& x);

// h - eta_t * grad; the schedule must be nonincreasing.
std::vector<double> gd_step_a(std::span<const double> h, std::span<const double> grad,
                              std::int64_t t, const StepSchedule& steps);

// Constant-step update h - eta * grad; rejects eta > 2/(beta+mu) when strong
// convexity is declared.
std::vector<double> gd_step_b(std::span<const double> h, std::span<const double> grad, double eta,
                              const LossSpec& loss);

// The declared contraction factor 1 - eta beta mu / (beta + mu).
double gd_b_lambda(double eta, const LossSpec& loss);

// Affine [0,1] encoding of gradients: g -> g/(2 G) + 1/2.
std::vector<double> encode_gradient(std::span<const double> grad, double grad_bound);
std::vector<double> decode_gradient(std::span<const double> answer, double grad_bound);

}  // namespace adlab
