#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "adlab/mdp.hpp"
#include "adlab/query.hpp"
#include "adlab/rng.hpp"

namespace adlab {

// The distribution library is a fixed closed set with exact means for the
// built-in query families, so true_mean can act as an oracle.

struct BernoulliProduct {
    std::vector<double> p;
};

// Axis-aligned box inside [0,1]^d.
struct UniformBox {
    std::vector<double> lo;
    std::vector<double> hi;

    static UniformBox unit(std::size_t dim) {
        return UniformBox{std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)};
    }
};

// Per-coordinate i.i.d. N(mu, sigma^2) clipped to [0,1].
struct ClippedGaussian {
    double mu = 0.5;
    double sigma = 0.1;
    int dim = 1;
};

// Tuples (s1, a, r, s2): (s1, a) uniform over cells, r ~ Bernoulli(R(s1,a)),
// s2 ~ P(s1, a, .).
struct MdpDistribution {
    MdpSpec mdp;
};

using Distribution = std::variant<BernoulliProduct, UniformBox, ClippedGaussian, MdpDistribution>;

struct Dataset {
    std::vector<DataPoint> points;
    std::uint64_t seed = 0;

    std::size_t n() const { return points.size(); }
};

void validate_distribution(const Distribution& dist);
std::size_t point_dim(const Distribution& dist);

DataPoint sample_point(const Distribution& dist, Rng& rng);

// n i.i.d. draws, bit-reproducible for a fixed seed.
Dataset sample_dataset(const Distribution& dist, std::size_t n, std::uint64_t seed);

// Exact E[q(X)] for (distribution, query-family) pairs with a closed form;
// throws std::invalid_argument otherwise.
std::vector<double> true_mean(const Distribution& dist, const Query& q);
bool has_closed_form_mean(const Distribution& dist, const Query& q);

struct McMean {
    std::vector<double> mean;
    std::vector<double> std_error;
    std::size_t budget = 0;
};

// Monte-Carlo fallback on fresh samples, independent of any Dataset.
McMean true_mean_mc(const Distribution& dist, const Query& q, std::size_t budget,
                    std::uint64_t seed);

// Coordinate-wise E[x]; rejected for MDP tuples.
std::vector<double> coordinate_means(const Distribution& dist);

}  // namespace adlab
