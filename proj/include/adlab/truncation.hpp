#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adlab/privacy.hpp"
#include "adlab/session.hpp"

namespace adlab {

enum class TruncationMode {
    ProgressiveLastK,    // zero state k rounds back, replay the full analyst's answers
    ConservativeAFirstK, // recorded answers through round k, zeros afterwards
    ConservativeBLastK,  // zero state k rounds back, re-query interactively with shared noise
};

struct TruncationSpec {
    TruncationMode mode = TruncationMode::ProgressiveLastK;
    std::int64_t k = 1;
};

TruncationMode default_mode_for(AnalystClass cls);

// Reconstructs the truncated trajectory {h_t^k} for t = 1..T from a completed
// session. Conservative-B mode re-runs the interaction with the truncated
// analyst's own queries but the recorded noise draws, and therefore needs the
// dataset and a noise log.
std::vector<AnalystState> truncated_replay(const SessionRecord& record,
                                           const TruncationSpec& spec);

// ||h_t - h_t^k|| at round t (1-based; trajectories carry h_1..h_{T+1}).
double closeness_gap(const std::vector<AnalystState>& full,
                     const std::vector<AnalystState>& truncated, std::int64_t t,
                     const NormSpec& norm);

struct IdentityCounterexample {
    std::uint64_t seed = 0;
    std::int64_t t = 0;
    std::vector<std::int64_t> full_coords;
    std::vector<std::int64_t> truncated_coords;
};

struct IdentityReport {
    std::int64_t depth_k = 0;
    double depth_k_real = 0.0;
    std::int64_t rounds_checked = 0;
    std::int64_t query_mismatches = 0;
    bool identical = true;
    std::vector<IdentityCounterexample> counterexamples;  // capped
    std::string note;
};

// Runs one session per seed, derives k from the class's depth formula, and
// asserts integer-exact grid equality h_t^k = h_t (and equal query ids) for
// every t <= rounds. Violations are collected, not thrown.
IdentityReport identity_depth_check(const ExperimentConfig& config,
                                    const std::vector<std::uint64_t>& seeds);

// The class depth for a configured analyst: depth_progressive /
// depth_conservative_a / depth_conservative_b with the analyst's declared
// constants.
DepthResult class_depth(const AnalystSpec& analyst, std::int64_t t_max = 1 << 20);

}  // namespace adlab
