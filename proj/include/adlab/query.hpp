#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "adlab/linalg.hpp"

namespace adlab {

using DataPoint = std::vector<double>;

// Query payloads form a closed set: every kind has a hand-written eval and,
// where the data distribution admits one, an exact mean. Query identity is a
// stable hash of the payload, so equal ids imply identical behavior.

// q_j(x) = clamp01(x[coords[j]])
struct IdentityQuery {
    std::vector<int> coords;
};

// q_j(x) = 1{ x[coords[j]] <= thresholds[j] }
struct ThresholdQuery {
    std::vector<int> coords;
    std::vector<double> thresholds;
};

// q(x) = clamp01(base + W x). Exact mean requires the affine image of the
// data support to stay inside [0,1]^{d_q} (checked at mean time).
struct AffineQuery {
    std::vector<double> base;
    Matrix weights;  // d_q x d_x
};

// q(x) = 1{ sum_i signs[i] * (x[coords[i]] - 1/2) >= 0 }, one-dimensional.
struct MajoritySignQuery {
    std::vector<int> coords;
    std::vector<std::int8_t> signs;  // +-1
};

// For (s1, a, r, s2) tuples: first S*A coordinates are r * 1{s1=i, a=j},
// the next S*A are 1{s1=i, a=j}. Cell order is row-major over (state, action).
struct RewardCellQuery {
    int n_states = 0;
    int n_actions = 0;
};

// q(x) = values, independent of x.
struct ConstantQuery {
    std::vector<double> values;
};

// Boolean probe whose id additionally carries an opaque encoding chosen by
// the analyst (the truncated-view attacker's transcript channel).
struct ReservedEncodingQuery {
    int probe_coord = 0;
    std::string encoding_hex;
};

// Per-sample encoded gradient of the logistic loss with l2 regularizer at
// fixed weights; data point = (features..., label in {0,1}). No closed-form
// mean; use the Monte-Carlo path.
struct LogisticGradQuery {
    std::vector<double> weights;
    double reg = 0.0;
    double grad_bound = 1.0;
};

using QueryPayload =
    std::variant<IdentityQuery, ThresholdQuery, AffineQuery, MajoritySignQuery,
                 RewardCellQuery, ConstantQuery, ReservedEncodingQuery, LogisticGradQuery>;

struct Query {
    std::string id;
    int dim = 0;
    QueryPayload payload;
};

Query make_query(QueryPayload payload);

// Evaluates the query at one data point; result is in [0,1]^{dim} by
// construction of every kind.
std::vector<double> eval_query(const Query& q, const DataPoint& x);

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

}  // namespace adlab
