#pragma once

#include <cstdint>
#include <vector>

#include "adlab/mechanism.hpp"
#include "adlab/schedule.hpp"

namespace adlab {

// An (alpha, beta) differential-privacy guarantee. (0,0) is the identity for
// linear composition.
struct DpParams {
    double alpha = 0.0;
    double beta = 0.0;
};

// k_real is the closed-form depth; k_int = max(1, ceil(k_real)) is what runs.
struct DepthResult {
    double k_real = 0.0;
    std::int64_t k_int = 1;
    bool saturated = true;  // conservative-A search can fail within the horizon
};

DepthResult make_depth(double k_real);

// Gaussian mechanism on queries with sensitivity sqrt(d_q)/n:
// alpha = sqrt(2 ln(1.25/beta)) * sqrt(d_q) / (n sigma).
DpParams gaussian_dp(double sigma, std::int64_t n, int d_q, double beta);

// (sum alpha_i, min(1, sum beta_i)).
DpParams linear_compose(const std::vector<DpParams>& parts);

// k-fold strong composition with slack beta_prime:
// (sqrt(2k ln(1/beta')) alpha + 2k alpha^2, k beta + beta'). Requires
// alpha <= 1 for the e^alpha - 1 <= 2 alpha simplification.
DpParams strong_compose(std::int64_t k, double alpha, double beta, double beta_prime);

// K(lambda) = ln(L C1 / ((1-lambda) lambda Delta)) / ln(1/lambda); lambda = 0
// means one-step memory.
DepthResult depth_progressive(double lambda, double lipschitz, double c_ones, double delta);

// Smallest t >= 1 with eta_t < Delta / C1.
DepthResult depth_conservative_a(const StepSchedule& eta, double delta, double c_ones,
                                 std::int64_t t_max);

// K(lambda) = ln(D / (Delta lambda)) / ln(1/lambda).
DepthResult depth_conservative_b(double lambda, double radius, double delta);

// K(lambda) = ln(D sqrt(d) / (sqrt(lambda_min) eps)) / ln(1/lambda), implied
// constant fixed to 1.
DepthResult depth_continuous(double lambda, double radius, int dim, double lambda_min, double eps);

// strong_compose(depth.k_int, mech.alpha, mech.beta, beta_prime); valid for
// arbitrarily large t by the truncation identity.
DpParams history_dp(const DpParams& mech, const DepthResult& depth, double beta_prime);

// ceil( multiplier * sqrt(K d_q ln(max(t,2))) / eps^2 ).
std::int64_t plan_samples(double eps, double delta, const DepthResult& depth, int d_q,
                          std::int64_t t, double multiplier = 1.0);

// Per-answer privacy of a noisy mechanism on a size-n dataset. Clamping is
// post-processing, so gaussian and clamped-gaussian report identical
// parameters; non-noisy kinds are rejected.
DpParams mechanism_dp(const MechanismSpec& spec, std::int64_t n, double beta);

}  // namespace adlab
