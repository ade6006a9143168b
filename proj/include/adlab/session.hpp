#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "adlab/analyst.hpp"
#include "adlab/distribution.hpp"
#include "adlab/mechanism.hpp"
#include "adlab/transcript.hpp"

namespace adlab {

struct ExperimentConfig {
    static constexpr int kVersion = 1;

    Distribution distribution = UniformBox::unit(1);
    std::size_t n = 100;
    std::int64_t rounds = 100;
    AnalystSpec analyst;
    MechanismSpec mechanism;
    std::uint64_t seed = 1;
    double accuracy_eps = 0.1;       // RunResult sample-accuracy threshold
    double envelope_multiplier = 1.0;
    bool use_mc_means = false;       // Monte-Carlo true means when no closed form
    std::size_t mc_budget = 100000;

    void validate() const;
};

struct RunResult {
    std::vector<double> per_round_error;  // ||a_t - E[q_t]||_inf
    double max_error = 0.0;
    double accuracy_rate = 0.0;
    std::int64_t escape_count = 0;
    double wall_ms = 0.0;
    std::uint64_t config_hash = 0;
};

struct SessionRecord {
    ExperimentConfig config;
    Dataset dataset;
    Transcript transcript;
    std::vector<AnalystState> trajectory;  // h_1 .. h_{T+1}
};

// Type B state left the radius-D ball; runs abort rather than project.
class EscapeError : public std::runtime_error {
public:
    EscapeError(std::int64_t round, double norm_value)
        : std::runtime_error("type B state escaped the declared ball"),
          round_(round),
          norm_value_(norm_value) {}
    std::int64_t round() const { return round_; }
    double norm_value() const { return norm_value_; }

private:
    std::int64_t round_;
    double norm_value_;
};

// Interaction loop: q_t = f(h_t), a_t = M(S, q_t), h_{t+1} = psi_t(h_t, a_t),
// with h_1 = h_0 = 0 so round 1's query is state-independent.
SessionRecord run_session(const ExperimentConfig& config, RunResult* result = nullptr);

std::uint64_t config_hash(const ExperimentConfig& config);

struct SplitCheckReport {
    std::int64_t rounds = 0;
    double max_deviation = 0.0;   // || h_direct - (h_half + B xi_b) ||_inf, worst round
    double lambda_min = 0.0;
    double max_error = 0.0;       // generalization error of the session
    std::int64_t escape_count = 0;
};

// Continuous-H type B session under the split Gaussian mechanism; verifies
// per round that step(h, q(S)+xi) = step(h, q(S)+xi_a) + B xi_b.
SplitCheckReport continuous_mode_session(const ExperimentConfig& config);

}  // namespace adlab
