#include "adlab/query.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace adlab {
namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t fnv1a(std::uint64_t h, double x) { return fnv1a(h, &x, sizeof(x)); }
std::uint64_t fnv1a(std::uint64_t h, std::int64_t x) { return fnv1a(h, &x, sizeof(x)); }

struct Hasher {
    std::uint64_t h = 0xcbf29ce484222325ULL;

    void tag(std::int64_t t) { h = fnv1a(h, t); }
    void put(double x) { h = fnv1a(h, x); }
    void put(const std::vector<double>& v) {
        tag(static_cast<std::int64_t>(v.size()));
        for (double x : v) put(x);
    }
    void put(const std::vector<int>& v) {
        tag(static_cast<std::int64_t>(v.size()));
        for (int x : v) tag(x);
    }
};

std::uint64_t hash_payload(const QueryPayload& payload) {
    Hasher hs;
    hs.tag(static_cast<std::int64_t>(payload.index()));
    std::visit(
        [&](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, IdentityQuery>) {
                hs.put(q.coords);
            } else if constexpr (std::is_same_v<T, ThresholdQuery>) {
                hs.put(q.coords);
                hs.put(q.thresholds);
            } else if constexpr (std::is_same_v<T, AffineQuery>) {
                hs.put(q.base);
                hs.tag(static_cast<std::int64_t>(q.weights.rows));
                hs.tag(static_cast<std::int64_t>(q.weights.cols));
                hs.put(q.weights.data);
            } else if constexpr (std::is_same_v<T, MajoritySignQuery>) {
                hs.put(q.coords);
                hs.tag(static_cast<std::int64_t>(q.signs.size()));
                for (auto s : q.signs) hs.tag(s);
            } else if constexpr (std::is_same_v<T, RewardCellQuery>) {
                hs.tag(q.n_states);
                hs.tag(q.n_actions);
            } else if constexpr (std::is_same_v<T, ConstantQuery>) {
                hs.put(q.values);
            } else if constexpr (std::is_same_v<T, ReservedEncodingQuery>) {
                hs.tag(q.probe_coord);
                hs.h = fnv1a(hs.h, q.encoding_hex.data(), q.encoding_hex.size());
            } else if constexpr (std::is_same_v<T, LogisticGradQuery>) {
                hs.put(q.weights);
                hs.put(q.reg);
                hs.put(q.grad_bound);
            }
        },
        payload);
    return hs.h;
}

int payload_dim(const QueryPayload& payload) {
    return std::visit(
        [](const auto& q) -> int {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, IdentityQuery>) {
                return static_cast<int>(q.coords.size());
            } else if constexpr (std::is_same_v<T, ThresholdQuery>) {
                if (q.coords.size() != q.thresholds.size()) {
                    throw std::invalid_argument("ThresholdQuery: coords/thresholds size mismatch");
                }
                return static_cast<int>(q.coords.size());
            } else if constexpr (std::is_same_v<T, AffineQuery>) {
                if (q.base.size() != q.weights.rows) {
                    throw std::invalid_argument("AffineQuery: base/weights row mismatch");
                }
                return static_cast<int>(q.base.size());
            } else if constexpr (std::is_same_v<T, MajoritySignQuery>) {
                if (q.coords.size() != q.signs.size()) {
                    throw std::invalid_argument("MajoritySignQuery: coords/signs size mismatch");
                }
                return 1;
            } else if constexpr (std::is_same_v<T, RewardCellQuery>) {
                return 2 * q.n_states * q.n_actions;
            } else if constexpr (std::is_same_v<T, ConstantQuery>) {
                return static_cast<int>(q.values.size());
            } else if constexpr (std::is_same_v<T, ReservedEncodingQuery>) {
                return 1;
            } else {
                return static_cast<int>(q.weights.size());
            }
        },
        payload);
}

const char* kind_name(const QueryPayload& p) {
    static const char* names[] = {"identity", "threshold", "affine",   "majority",
                                  "rewardcells", "constant", "reserved", "logisticgrad"};
    return names[p.index()];
}

}  // namespace

Query make_query(QueryPayload payload) {
    Query q;
    q.dim = payload_dim(payload);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s:%016llx", kind_name(payload),
                  static_cast<unsigned long long>(hash_payload(payload)));
    q.id = buf;
    q.payload = std::move(payload);
    return q;
}

std::vector<double> eval_query(const Query& q, const DataPoint& x) {
    std::vector<double> out(static_cast<std::size_t>(q.dim), 0.0);
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, IdentityQuery>) {
                for (std::size_t j = 0; j < p.coords.size(); ++j) {
                    out[j] = clamp01(x.at(static_cast<std::size_t>(p.coords[j])));
                }
            } else if constexpr (std::is_same_v<T, ThresholdQuery>) {
                for (std::size_t j = 0; j < p.coords.size(); ++j) {
                    out[j] = x.at(static_cast<std::size_t>(p.coords[j])) <= p.thresholds[j]
                                 ? 1.0
                                 : 0.0;
                }
            } else if constexpr (std::is_same_v<T, AffineQuery>) {
                std::vector<double> wx = matvec(p.weights, x);
                for (std::size_t j = 0; j < p.base.size(); ++j) {
                    out[j] = clamp01(p.base[j] + wx[j]);
                }
            } else if constexpr (std::is_same_v<T, MajoritySignQuery>) {
                double s = 0.0;
                for (std::size_t i = 0; i < p.coords.size(); ++i) {
                    s += static_cast<double>(p.signs[i]) *
                         (x.at(static_cast<std::size_t>(p.coords[i])) - 0.5);
                }
                out[0] = s >= 0.0 ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, RewardCellQuery>) {
                // x = (s1, a, r, s2)
                const int s1 = static_cast<int>(x.at(0));
                const int a = static_cast<int>(x.at(1));
                const double r = x.at(2);
                const int cells = p.n_states * p.n_actions;
                const int cell = s1 * p.n_actions + a;
                if (cell < 0 || cell >= cells) {
                    throw std::invalid_argument("RewardCellQuery: tuple outside MDP ranges");
                }
                out[static_cast<std::size_t>(cell)] = clamp01(r);
                out[static_cast<std::size_t>(cells + cell)] = 1.0;
            } else if constexpr (std::is_same_v<T, ConstantQuery>) {
                for (std::size_t j = 0; j < p.values.size(); ++j) out[j] = clamp01(p.values[j]);
            } else if constexpr (std::is_same_v<T, ReservedEncodingQuery>) {
                out[0] = x.at(static_cast<std::size_t>(p.probe_coord)) >= 0.5 ? 1.0 : 0.0;
            } else if constexpr (std::is_same_v<T, LogisticGradQuery>) {
                // point = (features[d], label); grad = -y * sigmoid(-y w.f) * f + reg * w
                const std::size_t d = p.weights.size();
                if (x.size() != d + 1) {
                    throw std::invalid_argument("LogisticGradQuery: point size != d+1");
                }
                const double y = x[d] >= 0.5 ? 1.0 : -1.0;
                double dot = 0.0;
                for (std::size_t j = 0; j < d; ++j) dot += p.weights[j] * x[j];
                const double s = 1.0 / (1.0 + std::exp(y * dot));
                for (std::size_t j = 0; j < d; ++j) {
                    const double g = -y * s * x[j] + p.reg * p.weights[j];
                    out[j] = clamp01(g / (2.0 * p.grad_bound) + 0.5);
                }
            }
        },
        q.payload);
    return out;
}

}  // namespace adlab
