#include "adlab/mechanism.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "adlab/grid.hpp"

namespace adlab {

void MechanismSpec::validate() const {
    if (d_q < 1) throw std::invalid_argument("MechanismSpec: d_q must be >= 1");
    if (kind == MechanismKind::RoundedEmpirical && !(round_eps > 0.0 && round_eps <= 1.0)) {
        throw std::invalid_argument("MechanismSpec: rounded-empirical needs eps in (0,1]");
    }
    if (is_noisy() && !(sigma > 0.0)) {
        throw std::invalid_argument("MechanismSpec: gaussian kinds need sigma > 0");
    }
    if (split_noise && !is_noisy()) {
        throw std::invalid_argument("MechanismSpec: split_noise requires a gaussian kind");
    }
}

std::string MechanismSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case MechanismKind::Empirical: os << "empirical"; break;
        case MechanismKind::RoundedEmpirical: os << "rounded-empirical(eps=" << round_eps << ")"; break;
        case MechanismKind::Gaussian: os << "gaussian(sigma=" << sigma << ")"; break;
        case MechanismKind::ClampedGaussian: os << "clamped-gaussian(sigma=" << sigma << ")"; break;
    }
    os << " seed=" << seed << " d_q=" << d_q;
    if (split_noise) os << " split";
    return os.str();
}

std::vector<double> empirical_answer(const Dataset& S, const Query& q) {
    if (S.n() == 0) throw std::invalid_argument("empirical_answer: empty dataset");
    std::vector<double> sum(static_cast<std::size_t>(q.dim), 0.0);
    for (const auto& x : S.points) {
        const auto v = eval_query(q, x);
        for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += v[j];
    }
    const double inv = 1.0 / static_cast<double>(S.n());
    for (double& s : sum) s *= inv;
    return sum;
}

std::vector<double> rounded_empirical_answer(const Dataset& S, const Query& q, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("rounded_empirical_answer: eps must be > 0");
    auto a = empirical_answer(S, q);
    const double n = static_cast<double>(S.n());
    const double step = eps / (2.0 * n);
    const auto max_index = static_cast<std::int64_t>(std::floor(2.0 * n / eps));
    for (double& v : a) {
        std::int64_t idx = round_half_even(v / step);
        idx = std::max<std::int64_t>(0, std::min(max_index, idx));
        v = static_cast<double>(idx) * step;
    }
    return a;
}

double sigma_for(double eps, double delta, std::int64_t t, int d_q) {
    if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("sigma_for: eps and delta must lie in (0,1)");
    }
    if (t < 1 || d_q < 1) throw std::invalid_argument("sigma_for: t and d_q must be >= 1");
    const double arg = 2.0 * static_cast<double>(t) * d_q / (eps * delta);
    if (arg <= 1.0) throw std::invalid_argument("sigma_for: log argument <= 1, sigma undefined");
    return eps / std::sqrt(2.0 * std::log(arg));
}

Mechanism::Mechanism(MechanismSpec spec) : spec_(spec), rng_(spec.seed) {
    spec_.validate();
}

std::vector<double> Mechanism::answer(const Dataset& S, const Query& q, Round& round) {
    if (q.dim != spec_.d_q) {
        throw std::invalid_argument("Mechanism: query dim does not match spec d_q");
    }
    round.empirical = empirical_answer(S, q);
    std::vector<double> a;
    switch (spec_.kind) {
        case MechanismKind::Empirical:
            a = round.empirical;
            break;
        case MechanismKind::RoundedEmpirical:
            a = rounded_empirical_answer(S, q, spec_.round_eps);
            break;
        case MechanismKind::Gaussian:
        case MechanismKind::ClampedGaussian: {
            a = round.empirical;
            round.noise.resize(a.size());
            if (spec_.split_noise) {
                // xi = xi_a + xi_b with independent N(0, sigma^2/2) halves
                round.noise_a.resize(a.size());
                round.noise_b.resize(a.size());
                const double half = spec_.sigma / std::numbers::sqrt2;
                for (std::size_t j = 0; j < a.size(); ++j) {
                    round.noise_a[j] = rng_.gauss(half);
                    round.noise_b[j] = rng_.gauss(half);
                    round.noise[j] = round.noise_a[j] + round.noise_b[j];
                }
            } else {
                for (std::size_t j = 0; j < a.size(); ++j) round.noise[j] = rng_.gauss(spec_.sigma);
            }
            for (std::size_t j = 0; j < a.size(); ++j) a[j] += round.noise[j];
            if (spec_.kind == MechanismKind::ClampedGaussian) a = clamp_box(std::move(a));
            break;
        }
    }
    round.answer = a;
    return a;
}

double sample_accuracy_rate(const Transcript& transcript, double eps) {
    if (transcript.rounds.empty()) {
        throw std::invalid_argument("sample_accuracy_rate: empty transcript");
    }
    std::size_t bad = 0;
    for (const auto& r : transcript.rounds) {
        if (linf_distance(r.answer, r.empirical) >= eps) ++bad;
    }
    return static_cast<double>(bad) / static_cast<double>(transcript.rounds.size());
}

}  // namespace adlab
