#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "adlab/query.hpp"

namespace adlab {

struct Round {
    std::int64_t t = 0;
    Query query;
    std::vector<double> answer;
    std::vector<double> empirical;
    std::vector<double> true_mean;
    // Gaussian mechanisms record their raw draws so replays can reuse them;
    // in split mode noise = noise_a + noise_b per coordinate.
    std::vector<double> noise;
    std::vector<double> noise_a;
    std::vector<double> noise_b;
};

struct Transcript {
    static constexpr int kVersion = 1;

    std::string mechanism_desc;
    std::string analyst_desc;
    std::vector<Round> rounds;

    std::size_t size() const { return rounds.size(); }

    // Rounds strictly increasing from 1 with no gaps; answer dims match the
    // round's query.
    void validate() const;

    // Header: t,query_id,answer...,empirical...,true_mean...
    void write_csv(std::ostream& os) const;

    std::string to_json() const;
    static Transcript from_json(const std::string& text);
};

// Max over rounds of ||a_t - E[q_t]||_inf.
double generalization_error(const Transcript& transcript);

}  // namespace adlab
