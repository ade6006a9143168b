#include "adlab/mdp.hpp"

#include <cmath>
#include <stdexcept>

namespace adlab {

void validate_mdp(const MdpSpec& mdp) {
    if (mdp.n_states < 1 || mdp.n_actions < 1) {
        throw std::invalid_argument("MdpSpec: need at least one state and one action");
    }
    const std::size_t want_p = static_cast<std::size_t>(mdp.n_states) * mdp.n_actions * mdp.n_states;
    const std::size_t want_r = static_cast<std::size_t>(mdp.n_states) * mdp.n_actions;
    if (mdp.transition.size() != want_p || mdp.reward.size() != want_r) {
        throw std::invalid_argument("MdpSpec: table size mismatch");
    }
    if (!(mdp.discount > 0.0 && mdp.discount < 1.0)) {
        throw std::invalid_argument("MdpSpec: discount must lie in (0,1)");
    }
    for (int i = 0; i < mdp.n_states; ++i) {
        for (int a = 0; a < mdp.n_actions; ++a) {
            double s = 0.0;
            for (int j = 0; j < mdp.n_states; ++j) {
                const double p = mdp.p(i, a, j);
                if (p < 0.0) throw std::invalid_argument("MdpSpec: negative transition probability");
                s += p;
            }
            if (std::abs(s - 1.0) > 1e-12) {
                throw std::invalid_argument("MdpSpec: transition row does not sum to 1");
            }
            const double r = mdp.r(i, a);
            if (r < 0.0 || r > 1.0) throw std::invalid_argument("MdpSpec: reward outside [0,1]");
        }
    }
}

std::vector<double> bellman_step(std::span<const double> h, std::span<const double> rewards,
                                 const MdpSpec& mdp) {
    if (mdp.n_actions < 1) throw std::invalid_argument("bellman_step: empty action set");
    if (h.size() != static_cast<std::size_t>(mdp.n_states) ||
        rewards.size() != static_cast<std::size_t>(mdp.n_states) * mdp.n_actions) {
        throw std::invalid_argument("bellman_step: dimension mismatch");
    }
    std::vector<double> out(h.size());
    for (int i = 0; i < mdp.n_states; ++i) {
        double best = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < mdp.n_actions; ++a) {
            double v = rewards[static_cast<std::size_t>(i) * mdp.n_actions + a];
            for (int j = 0; j < mdp.n_states; ++j) v += mdp.discount * mdp.p(i, a, j) * h[j];
            best = std::max(best, v);
        }
        out[static_cast<std::size_t>(i)] = best;
    }
    return out;
}

double reward_estimate(const std::vector<DataPoint>& tuples, int state, int action) {
    double sum = 0.0;
    long long count = 0;
    for (const auto& x : tuples) {
        if (static_cast<int>(x.at(0)) == state && static_cast<int>(x.at(1)) == action) {
            sum += x.at(2);
            ++count;
        }
    }
    return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

}  // namespace adlab
