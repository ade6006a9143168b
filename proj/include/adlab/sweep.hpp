#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "adlab/session.hpp"

namespace adlab {

struct SweepRow {
    std::int64_t rounds = 0;
    std::uint64_t seed = 0;
    double max_error = 0.0;
    double envelope = 0.0;   // theoretical scaling envelope at the config multiplier
    std::int64_t escaped = 0;
};

struct SweepTable {
    std::vector<std::string> columns{"t", "seed", "max_error", "envelope", "escaped"};
    std::vector<SweepRow> rows;

    void write_csv(std::ostream& os) const;
};

// Theoretical envelope for the analyst's class at t rounds:
// progressive sqrt(K d_q ln t / n), conservative (K d_q ln t)^{1/4} / sqrt(n),
// times the config multiplier.
double scaling_envelope(const ExperimentConfig& config, std::int64_t t);

// One row per (t, seed). Each seed runs a single session at max(t_axis) and
// reports prefix maxima at the requested checkpoints; rows are emitted in a
// deterministic order regardless of thread count.
SweepTable scaling_sweep(const ExperimentConfig& base, const std::vector<std::int64_t>& t_axis,
                         const std::vector<std::uint64_t>& seeds, int threads = 2);

// Overfit-attack sweep: one attack per (t, seed) pair.
SweepTable attack_sweep(std::size_t n, const std::vector<std::int64_t>& t_axis,
                        const std::vector<std::uint64_t>& seeds, int threads = 2);

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace adlab
