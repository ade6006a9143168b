#pragma once

#include <cstdint>

#include "adlab/analyst.hpp"
#include "adlab/distribution.hpp"

namespace adlab {

// Random instance families used by experiments and tests. Declared constants
// are exact: operator norms are scaled to the declared value.

// Contraction core that is strictly lower triangular in a random permuted,
// signed basis, scaled to ||A||_2 = lambda. Its nilpotent structure makes the
// truncated-replay gap vanish within d steps on the grid, so truncation
// identities do not ride on rounding luck (see also random_dense_contraction).
Matrix random_structured_contraction(std::size_t d, double lambda, Rng& rng);

// Dense rotation-scaled core, ||A||_2 = lambda exactly; spectral radius equals
// lambda, the adversarial case for grid identities. Used by continuous-mode
// bound tests.
Matrix random_dense_contraction(std::size_t d, double lambda, Rng& rng);

// lambda-progressive linear analyst with threshold-probe queries; L = 1.
AnalystSpec make_random_progressive_linear(int d, int d_q, double lambda, NormSpec norm,
                                           double delta, int data_dim, std::uint64_t seed,
                                           bool dense_core = false);

// Type B conservative linear analyst: ||A||_2 <= 1, affine probe feedback with
// closed loop A + B S scaled to exactly lambda, state ball of radius D.
AnalystSpec make_random_type_b_linear(int d, double lambda, double radius, double delta,
                                      int data_dim, std::uint64_t seed, bool dense_core = false,
                                      bool definite_answer_matrix = false);

// Type A conservative analyst: quadratic-loss gradient descent whose declared
// answer sensitivity is eta_t = 2 * grad_bound * step_t.
AnalystSpec make_type_a_gd(int d, const StepSchedule& weight_steps, double grad_bound,
                           double delta);

// Random MDP with Bernoulli rewards; the Bellman analyst for it.
MdpSpec make_random_mdp(int n_states, int n_actions, double discount, std::uint64_t seed);
AnalystSpec make_bellman_analyst(const MdpSpec& mdp, double delta);

// Stable RNN analyst with ||W||_2 = lambda and tanh nonlinearity.
AnalystSpec make_random_rnn(int d, int d_q, double lambda, double delta, int data_dim,
                            std::uint64_t seed);

}  // namespace adlab
