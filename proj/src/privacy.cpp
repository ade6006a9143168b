#include "adlab/privacy.hpp"

#include <cmath>
#include <stdexcept>

namespace adlab {

DepthResult make_depth(double k_real) {
    DepthResult d;
    d.k_real = std::max(0.0, k_real);
    d.k_int = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(d.k_real)));
    return d;
}

DpParams gaussian_dp(double sigma, std::int64_t n, int d_q, double beta) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_dp: sigma must be > 0");
    if (n < 1 || d_q < 1) throw std::invalid_argument("gaussian_dp: n and d_q must be >= 1");
    if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("gaussian_dp: beta not in (0,1)");
    const double alpha = std::sqrt(2.0 * std::log(1.25 / beta)) * std::sqrt(double(d_q)) /
                         (static_cast<double>(n) * sigma);
    return {alpha, beta};
}

DpParams linear_compose(const std::vector<DpParams>& parts) {
    if (parts.empty()) throw std::invalid_argument("linear_compose: empty list");
    DpParams out{0.0, 0.0};
    for (const auto& p : parts) {
        out.alpha += p.alpha;
        out.beta += p.beta;
    }
    out.beta = std::min(1.0, out.beta);
    return out;
}

DpParams strong_compose(std::int64_t k, double alpha, double beta, double beta_prime) {
    if (k < 0) throw std::invalid_argument("strong_compose: k must be >= 0");
    if (alpha < 0.0 || beta < 0.0 || beta > 1.0 || beta_prime < 0.0 || beta_prime > 1.0) {
        throw std::invalid_argument("strong_compose: parameters out of range");
    }
    if (alpha > 1.0) {
        throw std::invalid_argument(
            "strong_compose: alpha > 1, the e^alpha - 1 <= 2 alpha simplification fails");
    }
    if (k == 0) return {0.0, beta_prime};
    if (!(beta_prime > 0.0)) {
        throw std::invalid_argument("strong_compose: beta' must be > 0 for k >= 1");
    }
    const double kk = static_cast<double>(k);
    const double a = std::sqrt(2.0 * kk * std::log(1.0 / beta_prime)) * alpha + 2.0 * kk * alpha * alpha;
    const double b = std::min(1.0, kk * beta + beta_prime);
    return {a, b};
}

DepthResult depth_progressive(double lambda, double lipschitz, double c_ones, double delta) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("depth_progressive: lambda must lie in [0,1)");
    }
    if (!(lipschitz >= 0.0 && c_ones > 0.0 && delta > 0.0)) {
        throw std::invalid_argument("depth_progressive: need L >= 0 and C1, Delta > 0");
    }
    // lambda = 0: one-step memory; L = 0: the state never hears the answers
    if (lambda == 0.0 || lipschitz == 0.0) return make_depth(0.0);
    const double arg = lipschitz * c_ones / ((1.0 - lambda) * lambda * delta);
    if (arg <= 1.0) return make_depth(0.0);
    return make_depth(std::log(arg) / std::log(1.0 / lambda));
}

DepthResult depth_conservative_a(const StepSchedule& eta, double delta, double c_ones,
                                 std::int64_t t_max) {
    eta.validate();
    if (!(delta > 0.0 && c_ones > 0.0)) {
        throw std::invalid_argument("depth_conservative_a: Delta and C1 must be > 0");
    }
    if (t_max < 1) throw std::invalid_argument("depth_conservative_a: t_max must be >= 1");
    const double bound = delta / c_ones;
    for (std::int64_t t = 1; t <= t_max; ++t) {
        if (eta.eval(t) < bound) {
            DepthResult d;
            d.k_real = static_cast<double>(t);
            d.k_int = t;
            d.saturated = true;
            return d;
        }
    }
    DepthResult d;  // no saturation within horizon
    d.k_real = static_cast<double>(t_max);
    d.k_int = t_max;
    d.saturated = false;
    return d;
}

DepthResult depth_conservative_b(double lambda, double radius, double delta) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("depth_conservative_b: lambda must lie in (0,1)");
    }
    // D >= lambda * Delta keeps k_real >= 0; the D = Delta boundary is allowed.
    if (!(delta > 0.0 && radius >= delta * lambda)) {
        throw std::invalid_argument("depth_conservative_b: need D >= lambda * Delta > 0");
    }
    return make_depth(std::log(radius / (delta * lambda)) / std::log(1.0 / lambda));
}

DepthResult depth_continuous(double lambda, double radius, int dim, double lambda_min,
                             double eps) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::invalid_argument("depth_continuous: lambda must lie in (0,1)");
    }
    if (!(lambda_min > 0.0)) {
        throw std::invalid_argument("depth_continuous: lambda_min must be > 0 (B_t definite)");
    }
    if (!(radius > 0.0 && eps > 0.0) || dim < 1) {
        throw std::invalid_argument("depth_continuous: bad parameters");
    }
    const double arg = radius * std::sqrt(static_cast<double>(dim)) /
                       (std::sqrt(lambda_min) * eps);
    if (arg <= 1.0) return make_depth(0.0);
    return make_depth(std::log(arg) / std::log(1.0 / lambda));
}

DpParams history_dp(const DpParams& mech, const DepthResult& depth, double beta_prime) {
    return strong_compose(depth.k_int, mech.alpha, mech.beta, beta_prime);
}

std::int64_t plan_samples(double eps, double delta, const DepthResult& depth, int d_q,
                          std::int64_t t, double multiplier) {
    if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("plan_samples: eps and delta must lie in (0,1)");
    }
    if (d_q < 1) throw std::invalid_argument("plan_samples: d_q must be >= 1");
    const double k = static_cast<double>(std::max<std::int64_t>(1, depth.k_int));
    const double logt = std::log(static_cast<double>(std::max<std::int64_t>(t, 2)));
    const double n = multiplier * std::sqrt(k * d_q * logt) / (eps * eps);
    return static_cast<std::int64_t>(std::ceil(n));
}

DpParams mechanism_dp(const MechanismSpec& spec, std::int64_t n, double beta) {
    if (!spec.is_noisy()) {
        throw std::invalid_argument(
            "mechanism_dp: only the gaussian kinds carry differential privacy");
    }
    return gaussian_dp(spec.sigma, n, spec.d_q, beta);
}

}  // namespace adlab
