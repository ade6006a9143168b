#pragma once

#include <cstddef>
#include <vector>

#include "adlab/query.hpp"

namespace adlab {

// Finite MDP: transition probabilities P(i,a,j) and mean rewards R(i,a) in
// [0,1]. Sample tuples are (s1, a, r, s2) with r drawn Bernoulli(R(s1,a)),
// so reward queries keep exact means.
struct MdpSpec {
    int n_states = 0;
    int n_actions = 0;
    std::vector<double> transition;  // [i*A*S + a*S + j]
    std::vector<double> reward;      // [i*A + a]
    double discount = 0.9;

    double p(int i, int a, int j) const {
        return transition[(static_cast<std::size_t>(i) * n_actions + a) * n_states + j];
    }
    double r(int i, int a) const {
        return reward[static_cast<std::size_t>(i) * n_actions + a];
    }
};

void validate_mdp(const MdpSpec& mdp);

// One value-iteration sweep: out_i = max_a ( rewards(i,a) + gamma * sum_j P(i,a,j) h_j ).
// gamma-contractive in l_inf.
std::vector<double> bellman_step(std::span<const double> h, std::span<const double> rewards,
                                 const MdpSpec& mdp);

// Empirical mean reward over tuples matching (state, action); 0 when no tuple matches.
double reward_estimate(const std::vector<DataPoint>& tuples, int state, int action);

}  // namespace adlab
