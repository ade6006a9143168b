#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adlab/mechanism.hpp"

namespace adlab {

struct AttackResult {
    std::size_t n = 0;
    int rounds = 0;
    double final_error = 0.0;        // |final answer - exact mean| of the boosted query
    double final_true_mean = 0.0;
    double hoeffding_baseline = 0.0; // sqrt(ln 2 / (2n))
};

// Sign-correlation overfit attack against the raw empirical mechanism:
// t fair-coin coordinate queries, then the majority-of-signed-biases query.
// Any other mechanism kind is rejected: the attack needs the full transcript
// and unobscured answers.
AttackResult overfit_attack(std::size_t n, int rounds, std::uint64_t seed,
                            MechanismKind mechanism = MechanismKind::Empirical);

struct CounterexampleReport {
    int rounds = 0;
    int bits = 0;
    bool exact = false;
    int mismatches = 0;
    bool precision_failure = false;
    std::string note;
};

// Truncated-view attacker with window 1: the query encoding carries the whole
// transcript at the stated bit budget; n = 2^bits - 1 makes boolean empirical
// answers exactly representable.
CounterexampleReport counterexample_demo(int rounds, int bits, std::uint64_t seed,
                                         std::int64_t budget_words = 4096);

struct InterleaveDemoReport {
    int rounds = 0;
    int digits = 0;
    bool continuous_exact = false;   // off-grid run recovers every answer
    bool grid_recovered = false;     // on-grid run should fail to recover
    int grid_mismatches = 0;
    std::string note;
};

// The digit-interleaving analyst run twice: on continuous H (decode must be
// exact) and on the Delta-grid (quantization destroys the encoding).
InterleaveDemoReport interleave_demo(double lambda, int digits, int rounds, double grid_delta,
                                     std::uint64_t seed);

}  // namespace adlab
