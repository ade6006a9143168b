#include "adlab/session.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "adlab/json_io.hpp"

namespace adlab {

void ExperimentConfig::validate() const {
    validate_distribution(distribution);
    analyst.validate();
    mechanism.validate();
    if (n < 1) throw std::invalid_argument("ExperimentConfig: n must be >= 1");
    if (rounds < 1) throw std::invalid_argument("ExperimentConfig: rounds must be >= 1");
    if (mechanism.d_q != analyst.d_q) {
        throw std::invalid_argument("ExperimentConfig: mechanism d_q != analyst d_q");
    }
    if (!(accuracy_eps > 0.0)) throw std::invalid_argument("ExperimentConfig: accuracy_eps <= 0");
}

std::uint64_t config_hash(const ExperimentConfig& config) {
    const std::string dump = experiment_config_to_json(config).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::vector<double> round_true_mean(const ExperimentConfig& config, const Query& q,
                                    std::uint64_t mc_seed) {
    if (config.use_mc_means && !has_closed_form_mean(config.distribution, q)) {
        return true_mean_mc(config.distribution, q, config.mc_budget, mc_seed).mean;
    }
    return true_mean(config.distribution, q);
}

}  // namespace

SessionRecord run_session(const ExperimentConfig& config, RunResult* result) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    SessionRecord rec;
    rec.config = config;
    rec.dataset = sample_dataset(config.distribution, config.n, Rng::derive_seed(config.seed, 1));

    Analyst analyst(config.analyst);
    MechanismSpec mech_spec = config.mechanism;
    mech_spec.seed = Rng::derive_seed(config.seed, 2);
    Mechanism mechanism(mech_spec);

    rec.transcript.mechanism_desc = mech_spec.describe();
    rec.transcript.analyst_desc = config.analyst.describe();

    const double radius = analyst.radius();
    RunResult local;
    AnalystState state = analyst.initial_state();
    rec.trajectory.push_back(state);
    for (std::int64_t t = 1; t <= config.rounds; ++t) {
        Round round;
        round.t = t;
        round.query = analyst.next_query(state);
        const auto answer = mechanism.answer(rec.dataset, round.query, round);
        round.true_mean = round_true_mean(config, round.query, Rng::derive_seed(config.seed, 100 + t));
        local.per_round_error.push_back(linf_distance(round.answer, round.true_mean));
        rec.transcript.rounds.push_back(std::move(round));

        state = analyst.step(state, answer);
        rec.trajectory.push_back(state);
        if (radius > 0.0) {
            const double norm_value = lp_norm(state.h, config.analyst.norm);
            if (norm_value > radius) throw EscapeError(t, norm_value);
        }
    }
    rec.transcript.validate();

    if (result != nullptr) {
        local.max_error = 0.0;
        for (double e : local.per_round_error) local.max_error = std::max(local.max_error, e);
        local.accuracy_rate = sample_accuracy_rate(rec.transcript, config.accuracy_eps);
        local.config_hash = config_hash(config);
        local.wall_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
        *result = std::move(local);
    }
    return rec;
}

SplitCheckReport continuous_mode_session(const ExperimentConfig& config) {
    config.validate();
    if (config.analyst.grid_mode()) {
        throw std::invalid_argument("continuous_mode_session: needs a continuous state space");
    }
    if (config.analyst.analyst_class() != AnalystClass::ConservativeB) {
        throw std::invalid_argument("continuous_mode_session: needs a type B analyst");
    }
    if (!config.mechanism.split_noise || config.mechanism.kind != MechanismKind::Gaussian) {
        throw std::invalid_argument(
            "continuous_mode_session: needs the Gaussian mechanism with split noise");
    }
    if (config.analyst.d_q != config.analyst.d) {
        throw std::invalid_argument("continuous_mode_session: requires d_q = d");
    }

    Analyst analyst(config.analyst);
    // B_t must be diagonal and definite; lambda_min = min |B_ii|
    double lambda_min = std::numeric_limits<double>::infinity();
    {
        const Matrix b = analyst.answer_matrix(1);
        double sign = 0.0;
        for (std::size_t i = 0; i < b.rows; ++i) {
            for (std::size_t j = 0; j < b.cols; ++j) {
                if (i != j && std::abs(b(i, j)) > 0.0) {
                    throw std::invalid_argument(
                        "continuous_mode_session: B_t must be diagonal to certify definiteness");
                }
            }
            const double v = b(i, i);
            if (v == 0.0) throw std::invalid_argument("continuous_mode_session: B_t not definite");
            if (sign == 0.0) sign = v > 0.0 ? 1.0 : -1.0;
            if (v * sign <= 0.0) {
                throw std::invalid_argument("continuous_mode_session: B_t not definite");
            }
            lambda_min = std::min(lambda_min, std::abs(v));
        }
    }

    Dataset dataset = sample_dataset(config.distribution, config.n, Rng::derive_seed(config.seed, 1));
    MechanismSpec mech_spec = config.mechanism;
    mech_spec.seed = Rng::derive_seed(config.seed, 2);
    Mechanism mechanism(mech_spec);

    SplitCheckReport rep;
    rep.lambda_min = lambda_min;
    const double radius = analyst.radius();
    AnalystState state = analyst.initial_state();
    for (std::int64_t t = 1; t <= config.rounds; ++t) {
        Round round;
        round.t = t;
        round.query = analyst.next_query(state);
        const auto answer = mechanism.answer(dataset, round.query, round);
        round.true_mean = true_mean(config.distribution, round.query);
        rep.max_error = std::max(rep.max_error, linf_distance(round.answer, round.true_mean));

        const auto direct = analyst.transition(state.h, t, answer);
        const auto half_answer = add(round.empirical, round.noise_a);
        auto split_path = analyst.transition(state.h, t, half_answer);
        const auto tail = matvec(analyst.answer_matrix(t), round.noise_b);
        split_path = add(split_path, tail);
        rep.max_deviation = std::max(rep.max_deviation, linf_distance(direct, split_path));

        state = analyst.step(state, answer);
        if (radius > 0.0) {
            const double norm_value = lp_norm(state.h, config.analyst.norm);
            if (norm_value > radius) {
                ++rep.escape_count;
                throw EscapeError(t, norm_value);
            }
        }
        ++rep.rounds;
    }
    return rep;
}

}  // namespace adlab
