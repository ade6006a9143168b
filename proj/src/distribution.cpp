#include "adlab/distribution.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace adlab {
namespace {

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double norm_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

// E[clip(X,0,1)] for X ~ N(mu, sigma^2).
double clipped_gaussian_mean(double mu, double sigma) {
    const double alpha = (0.0 - mu) / sigma;
    const double beta = (1.0 - mu) / sigma;
    return (1.0 - norm_cdf(beta)) + mu * (norm_cdf(beta) - norm_cdf(alpha)) -
           sigma * (norm_pdf(beta) - norm_pdf(alpha));
}

// P(clip(X,0,1) <= thr).
double clipped_gaussian_cdf(double mu, double sigma, double thr) {
    if (thr < 0.0) return 0.0;
    if (thr >= 1.0) return 1.0;
    return norm_cdf((thr - mu) / sigma);
}

// log C(n, k) via lgamma.
double log_binom(long long n, long long k) {
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

[[noreturn]] void no_closed_form() {
    throw std::invalid_argument("true_mean: no closed form for this (distribution, query) pair");
}

}  // namespace

void validate_distribution(const Distribution& dist) {
    std::visit(
        [](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, BernoulliProduct>) {
                if (d.p.empty()) throw std::invalid_argument("BernoulliProduct: empty p");
                for (double p : d.p) {
                    if (p < 0.0 || p > 1.0) {
                        throw std::invalid_argument("BernoulliProduct: p outside [0,1]");
                    }
                }
            } else if constexpr (std::is_same_v<T, UniformBox>) {
                if (d.lo.empty() || d.lo.size() != d.hi.size()) {
                    throw std::invalid_argument("UniformBox: bad bounds");
                }
                for (std::size_t i = 0; i < d.lo.size(); ++i) {
                    if (!(0.0 <= d.lo[i] && d.lo[i] <= d.hi[i] && d.hi[i] <= 1.0)) {
                        throw std::invalid_argument("UniformBox: bounds must satisfy 0<=lo<=hi<=1");
                    }
                }
            } else if constexpr (std::is_same_v<T, ClippedGaussian>) {
                if (!(d.sigma > 0.0)) throw std::invalid_argument("ClippedGaussian: sigma <= 0");
                if (d.dim < 1) throw std::invalid_argument("ClippedGaussian: dim < 1");
            } else {
                validate_mdp(d.mdp);
            }
        },
        dist);
}

std::size_t point_dim(const Distribution& dist) {
    return std::visit(
        [](const auto& d) -> std::size_t {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, BernoulliProduct>) {
                return d.p.size();
            } else if constexpr (std::is_same_v<T, UniformBox>) {
                return d.lo.size();
            } else if constexpr (std::is_same_v<T, ClippedGaussian>) {
                return static_cast<std::size_t>(d.dim);
            } else {
                return 4;  // (s1, a, r, s2)
            }
        },
        dist);
}

DataPoint sample_point(const Distribution& dist, Rng& rng) {
    return std::visit(
        [&rng](const auto& d) -> DataPoint {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, BernoulliProduct>) {
                DataPoint x(d.p.size());
                for (std::size_t i = 0; i < d.p.size(); ++i) {
                    x[i] = rng.bernoulli(d.p[i]) ? 1.0 : 0.0;
                }
                return x;
            } else if constexpr (std::is_same_v<T, UniformBox>) {
                DataPoint x(d.lo.size());
                for (std::size_t i = 0; i < d.lo.size(); ++i) {
                    x[i] = d.lo[i] + (d.hi[i] - d.lo[i]) * rng.uniform01();
                }
                return x;
            } else if constexpr (std::is_same_v<T, ClippedGaussian>) {
                DataPoint x(static_cast<std::size_t>(d.dim));
                for (auto& v : x) v = clamp01(d.mu + rng.gauss(d.sigma));
                return x;
            } else {
                const auto& m = d.mdp;
                const int s1 = static_cast<int>(rng.uniform_int(0, m.n_states - 1));
                const int a = static_cast<int>(rng.uniform_int(0, m.n_actions - 1));
                const double r = rng.bernoulli(m.r(s1, a)) ? 1.0 : 0.0;
                // inverse-CDF draw over next states
                const double u = rng.uniform01();
                int s2 = m.n_states - 1;
                double acc = 0.0;
                for (int j = 0; j < m.n_states; ++j) {
                    acc += m.p(s1, a, j);
                    if (u < acc) {
                        s2 = j;
                        break;
                    }
                }
                return DataPoint{static_cast<double>(s1), static_cast<double>(a), r,
                                 static_cast<double>(s2)};
            }
        },
        dist);
}

Dataset sample_dataset(const Distribution& dist, std::size_t n, std::uint64_t seed) {
    validate_distribution(dist);
    if (n < 1) throw std::invalid_argument("sample_dataset: n must be >= 1");
    Rng rng(seed);
    Dataset ds;
    ds.seed = seed;
    ds.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ds.points.push_back(sample_point(dist, rng));
    return ds;
}

std::vector<double> coordinate_means(const Distribution& dist) {
    return std::visit(
        [](const auto& d) -> std::vector<double> {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, BernoulliProduct>) {
                return d.p;
            } else if constexpr (std::is_same_v<T, UniformBox>) {
                std::vector<double> m(d.lo.size());
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = 0.5 * (d.lo[i] + d.hi[i]);
                return m;
            } else if constexpr (std::is_same_v<T, ClippedGaussian>) {
                return std::vector<double>(static_cast<std::size_t>(d.dim),
                                           clipped_gaussian_mean(d.mu, d.sigma));
            } else {
                throw std::invalid_argument("coordinate_means: undefined for MDP tuples");
            }
        },
        dist);
}

namespace {

// P(x[coord] >= 1/2), the mean of the reserved-encoding probe.
double ge_half_mean(const Distribution& dist, int coord) {
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, BernoulliProduct>) {
                return d.p.at(static_cast<std::size_t>(coord));
            } else if constexpr (std::is_same_v<T, UniformBox>) {
                const double lo = d.lo.at(static_cast<std::size_t>(coord));
                const double hi = d.hi.at(static_cast<std::size_t>(coord));
                if (hi <= 0.5) return 0.0;
                if (lo >= 0.5) return 1.0;
                return (hi - 0.5) / (hi - lo);
            } else if constexpr (std::is_same_v<T, ClippedGaussian>) {
                return 1.0 - clipped_gaussian_cdf(d.mu, d.sigma, 0.5);
            } else {
                no_closed_form();
            }
        },
        dist);
}

double threshold_mean(const Distribution& dist, int coord, double thr) {
    return std::visit(
        [&](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, BernoulliProduct>) {
                if (thr < 0.0) return 0.0;
                if (thr >= 1.0) return 1.0;
                return 1.0 - d.p.at(static_cast<std::size_t>(coord));
            } else if constexpr (std::is_same_v<T, UniformBox>) {
                const double lo = d.lo.at(static_cast<std::size_t>(coord));
                const double hi = d.hi.at(static_cast<std::size_t>(coord));
                if (thr < lo) return 0.0;
                if (thr >= hi) return 1.0;
                return (thr - lo) / (hi - lo);
            } else if constexpr (std::is_same_v<T, ClippedGaussian>) {
                return clipped_gaussian_cdf(d.mu, d.sigma, thr);
            } else {
                no_closed_form();
            }
        },
        dist);
}

}  // namespace

bool has_closed_form_mean(const Distribution& dist, const Query& q) {
    try {
        (void)true_mean(dist, q);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

std::vector<double> true_mean(const Distribution& dist, const Query& q) {
    validate_distribution(dist);
    return std::visit(
        [&](const auto& p) -> std::vector<double> {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, IdentityQuery>) {
                const auto means = coordinate_means(dist);
                std::vector<double> out(p.coords.size());
                for (std::size_t j = 0; j < p.coords.size(); ++j) {
                    out[j] = clamp01(means.at(static_cast<std::size_t>(p.coords[j])));
                }
                return out;
            } else if constexpr (std::is_same_v<T, ThresholdQuery>) {
                std::vector<double> out(p.coords.size());
                for (std::size_t j = 0; j < p.coords.size(); ++j) {
                    out[j] = threshold_mean(dist, p.coords[j], p.thresholds[j]);
                }
                return out;
            } else if constexpr (std::is_same_v<T, AffineQuery>) {
                // Exact only when base + W x never clips over the support box.
                const auto means = coordinate_means(dist);
                if (p.weights.cols != means.size()) {
                    throw std::invalid_argument("true_mean: affine width mismatch");
                }
                // support bounds per coordinate
                std::vector<double> lo(means.size(), 0.0), hi(means.size(), 1.0);
                if (const auto* box = std::get_if<UniformBox>(&dist)) {
                    lo = box->lo;
                    hi = box->hi;
                }
                for (std::size_t i = 0; i < p.base.size(); ++i) {
                    double vmin = p.base[i], vmax = p.base[i];
                    for (std::size_t j = 0; j < means.size(); ++j) {
                        const double w = p.weights(i, j);
                        vmin += w * (w >= 0.0 ? lo[j] : hi[j]);
                        vmax += w * (w >= 0.0 ? hi[j] : lo[j]);
                    }
                    if (vmin < -1e-12 || vmax > 1.0 + 1e-12) {
                        throw std::invalid_argument(
                            "true_mean: affine query clips over the data support");
                    }
                }
                std::vector<double> out = matvec(p.weights, means);
                for (std::size_t i = 0; i < out.size(); ++i) out[i] += p.base[i];
                return out;
            } else if constexpr (std::is_same_v<T, MajoritySignQuery>) {
                const auto* bp = std::get_if<BernoulliProduct>(&dist);
                if (bp == nullptr) no_closed_form();
                for (int c : p.coords) {
                    if (bp->p.at(static_cast<std::size_t>(c)) != 0.5) {
                        throw std::invalid_argument(
                            "true_mean: majority query needs fair Bernoulli coordinates");
                    }
                }
                const long long t = static_cast<long long>(p.coords.size());
                if (t == 0) return {1.0};  // empty sum >= 0
                if (t % 2 == 1) return {0.5};
                const double atom = std::exp(log_binom(t, t / 2) -
                                             static_cast<double>(t) * std::numbers::ln2);
                return {0.5 + 0.5 * atom};
            } else if constexpr (std::is_same_v<T, RewardCellQuery>) {
                const auto* md = std::get_if<MdpDistribution>(&dist);
                if (md == nullptr) no_closed_form();
                const auto& m = md->mdp;
                if (p.n_states != m.n_states || p.n_actions != m.n_actions) {
                    throw std::invalid_argument("true_mean: reward query / MDP shape mismatch");
                }
                const int cells = m.n_states * m.n_actions;
                const double pcell = 1.0 / static_cast<double>(cells);
                std::vector<double> out(static_cast<std::size_t>(2 * cells));
                for (int i = 0; i < m.n_states; ++i) {
                    for (int a = 0; a < m.n_actions; ++a) {
                        const int cell = i * m.n_actions + a;
                        out[static_cast<std::size_t>(cell)] = pcell * m.r(i, a);
                        out[static_cast<std::size_t>(cells + cell)] = pcell;
                    }
                }
                return out;
            } else if constexpr (std::is_same_v<T, ConstantQuery>) {
                std::vector<double> out(p.values.size());
                for (std::size_t i = 0; i < out.size(); ++i) out[i] = clamp01(p.values[i]);
                return out;
            } else if constexpr (std::is_same_v<T, ReservedEncodingQuery>) {
                return {ge_half_mean(dist, p.probe_coord)};
            } else {
                no_closed_form();
            }
        },
        q.payload);
}

McMean true_mean_mc(const Distribution& dist, const Query& q, std::size_t budget,
                    std::uint64_t seed) {
    validate_distribution(dist);
    if (budget < 2) throw std::invalid_argument("true_mean_mc: budget must be >= 2");
    Rng rng(seed);
    std::vector<double> sum(static_cast<std::size_t>(q.dim), 0.0);
    std::vector<double> sumsq(static_cast<std::size_t>(q.dim), 0.0);
    for (std::size_t i = 0; i < budget; ++i) {
        const auto v = eval_query(q, sample_point(dist, rng));
        for (std::size_t j = 0; j < v.size(); ++j) {
            sum[j] += v[j];
            sumsq[j] += v[j] * v[j];
        }
    }
    McMean out;
    out.budget = budget;
    out.mean.resize(sum.size());
    out.std_error.resize(sum.size());
    const double n = static_cast<double>(budget);
    for (std::size_t j = 0; j < sum.size(); ++j) {
        out.mean[j] = sum[j] / n;
        const double var = std::max(0.0, sumsq[j] / n - out.mean[j] * out.mean[j]);
        out.std_error[j] = std::sqrt(var / n);
    }
    return out;
}

}  // namespace adlab
