#pragma once

#include <cstdint>
#include <string>

#include "adlab/distribution.hpp"
#include "adlab/rng.hpp"
#include "adlab/transcript.hpp"

namespace adlab {

enum class MechanismKind { Empirical, RoundedEmpirical, Gaussian, ClampedGaussian };

struct MechanismSpec {
    MechanismKind kind = MechanismKind::Empirical;
    double round_eps = 1.0;   // rounded-empirical grid parameter, step eps/(2n)
    double sigma = 0.0;       // gaussian noise scale; 1e-300 allowed for limit tests
    std::uint64_t seed = 0;
    int d_q = 1;
    bool split_noise = false;  // gaussian kinds draw xi = xi_a + xi_b halves

    void validate() const;
    std::string describe() const;
    bool is_noisy() const {
        return kind == MechanismKind::Gaussian || kind == MechanismKind::ClampedGaussian;
    }
};

// Exact sample mean of q over S, coordinate-wise in [0,1].
std::vector<double> empirical_answer(const Dataset& S, const Query& q);

// Projects each coordinate of the empirical answer onto {0, eps/2n, eps/n, ..}
// inside [0,1]; ties go to the even grid index.
std::vector<double> rounded_empirical_answer(const Dataset& S, const Query& q, double eps);

// sigma = eps / sqrt(2 ln(2 t d_q / (eps delta))), the calibration that makes
// the clamped Gaussian mechanism (eps, eps*delta)-sample accurate over t rounds.
double sigma_for(double eps, double delta, std::int64_t t, int d_q);

inline std::vector<double> clamp_box(std::vector<double> v) {
    for (double& x : v) x = clamp01(x);
    return v;
}

// Stateful only through the RNG handle; a session's answers are sequential.
class Mechanism {
public:
    explicit Mechanism(MechanismSpec spec);

    const MechanismSpec& spec() const { return spec_; }

    // Computes the answer and fills the round's answer/empirical/noise fields
    // (query and true_mean are the caller's).
    std::vector<double> answer(const Dataset& S, const Query& q, Round& round);

private:
    MechanismSpec spec_;
    Rng rng_;
};

// Fraction of rounds with ||a_t - q_t(S)||_inf >= eps.
double sample_accuracy_rate(const Transcript& transcript, double eps);

}  // namespace adlab
