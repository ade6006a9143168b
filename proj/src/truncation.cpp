#include "adlab/truncation.hpp"

#include <cmath>
#include <stdexcept>

namespace adlab {
namespace {

// Mechanism answer reconstruction for interactive replays: deterministic
// kinds recompute, gaussian kinds reuse the recorded draw.
std::vector<double> replay_answer(const SessionRecord& rec, const Query& q, const Round& round) {
    const MechanismSpec& m = rec.config.mechanism;
    switch (m.kind) {
        case MechanismKind::Empirical:
            return empirical_answer(rec.dataset, q);
        case MechanismKind::RoundedEmpirical:
            return rounded_empirical_answer(rec.dataset, q, m.round_eps);
        case MechanismKind::Gaussian:
        case MechanismKind::ClampedGaussian: {
            if (round.noise.size() != static_cast<std::size_t>(q.dim)) {
                throw std::invalid_argument(
                    "truncated_replay: conservative-B replay needs the recorded noise log");
            }
            auto a = empirical_answer(rec.dataset, q);
            for (std::size_t j = 0; j < a.size(); ++j) a[j] += round.noise[j];
            if (m.kind == MechanismKind::ClampedGaussian) a = clamp_box(std::move(a));
            return a;
        }
    }
    throw std::logic_error("replay_answer: unreachable");
}

}  // namespace

TruncationMode default_mode_for(AnalystClass cls) {
    switch (cls) {
        case AnalystClass::Progressive: return TruncationMode::ProgressiveLastK;
        case AnalystClass::ConservativeA: return TruncationMode::ConservativeAFirstK;
        case AnalystClass::ConservativeB: return TruncationMode::ConservativeBLastK;
        case AnalystClass::Adversarial: break;
    }
    throw std::invalid_argument("default_mode_for: adversarial analysts have no truncation mode");
}

DepthResult class_depth(const AnalystSpec& spec, std::int64_t t_max) {
    Analyst analyst(spec);
    const double c1 = ones_norm(static_cast<std::size_t>(spec.d_q), spec.norm);
    switch (spec.analyst_class()) {
        case AnalystClass::Progressive: {
            const double lip = analyst.declared_answer_lip(1);
            if (!std::isfinite(lip)) {
                throw std::invalid_argument("class_depth: no finite declared answer Lipschitz");
            }
            return depth_progressive(analyst.declared_lambda(), lip, c1, spec.delta);
        }
        case AnalystClass::ConservativeA: {
            const auto* gda = std::get_if<GdaFamily>(&spec.family);
            if (gda == nullptr) throw std::invalid_argument("class_depth: unknown type A family");
            StepSchedule eta = gda->steps;
            eta.scale *= 2.0 * gda->grad_bound;  // declared eta_t = 2 G step_t
            return depth_conservative_a(eta, spec.delta, c1, t_max);
        }
        case AnalystClass::ConservativeB:
            return depth_conservative_b(analyst.declared_lambda(), analyst.radius(), spec.delta);
        case AnalystClass::Adversarial:
            break;
    }
    throw std::invalid_argument("class_depth: adversarial analysts have no truncation depth");
}

std::vector<AnalystState> truncated_replay(const SessionRecord& record,
                                           const TruncationSpec& spec) {
    if (spec.k < 1) throw std::invalid_argument("truncated_replay: k must be >= 1");
    Analyst analyst(record.config.analyst);
    const auto& rounds = record.transcript.rounds;
    const auto total = static_cast<std::int64_t>(rounds.size());

    const AnalystClass cls = record.config.analyst.analyst_class();
    const bool mode_ok =
        (spec.mode == TruncationMode::ProgressiveLastK && cls == AnalystClass::Progressive) ||
        (spec.mode == TruncationMode::ConservativeAFirstK && cls == AnalystClass::ConservativeA) ||
        (spec.mode == TruncationMode::ConservativeBLastK && cls == AnalystClass::ConservativeB);
    if (!mode_ok) {
        throw std::invalid_argument("truncated_replay: mode incompatible with the analyst class");
    }

    std::vector<AnalystState> out;
    out.reserve(static_cast<std::size_t>(total) + 1);

    if (spec.mode == TruncationMode::ConservativeAFirstK) {
        AnalystState state = analyst.initial_state();
        out.push_back(state);
        const std::vector<double> zeros(static_cast<std::size_t>(record.config.analyst.d_q), 0.0);
        for (std::int64_t s = 1; s <= total; ++s) {
            const auto& a =
                s <= spec.k ? rounds[static_cast<std::size_t>(s - 1)].answer : zeros;
            state = analyst.step(state, a);
            out.push_back(state);
        }
        return out;
    }

    for (std::int64_t t = 1; t <= total + 1; ++t) {
        const std::int64_t s0 = std::max<std::int64_t>(1, t - spec.k);
        AnalystState state = analyst.initial_state();
        state.round = s0;
        for (std::int64_t s = s0; s < t; ++s) {
            const auto& round = rounds[static_cast<std::size_t>(s - 1)];
            if (spec.mode == TruncationMode::ProgressiveLastK) {
                state = analyst.step(state, round.answer);
            } else {
                const Query q = analyst.next_query(state);
                state = analyst.step(state, replay_answer(record, q, round));
            }
        }
        out.push_back(state);
    }
    return out;
}

double closeness_gap(const std::vector<AnalystState>& full,
                     const std::vector<AnalystState>& truncated, std::int64_t t,
                     const NormSpec& norm) {
    if (t < 1 || static_cast<std::size_t>(t) > full.size() ||
        static_cast<std::size_t>(t) > truncated.size()) {
        throw std::invalid_argument("closeness_gap: round not present in both trajectories");
    }
    const auto& a = full[static_cast<std::size_t>(t - 1)];
    const auto& b = truncated[static_cast<std::size_t>(t - 1)];
    return lp_distance(std::span<const double>(a.h), b.h, norm);
}

IdentityReport identity_depth_check(const ExperimentConfig& config,
                                    const std::vector<std::uint64_t>& seeds) {
    if (!config.analyst.grid_mode()) {
        throw std::invalid_argument("identity_depth_check: needs grid mode (Delta > 0)");
    }
    const DepthResult depth = class_depth(config.analyst);
    TruncationSpec tspec{default_mode_for(config.analyst.analyst_class()), depth.k_int};

    IdentityReport rep;
    rep.depth_k = depth.k_int;
    rep.depth_k_real = depth.k_real;
    for (const auto seed : seeds) {
        ExperimentConfig cfg = config;
        cfg.seed = seed;
        const SessionRecord rec = run_session(cfg);
        const auto trunc = truncated_replay(rec, tspec);
        Analyst analyst(cfg.analyst);
        for (std::size_t i = 0; i < rec.trajectory.size(); ++i) {
            ++rep.rounds_checked;
            const auto& hf = rec.trajectory[i];
            const auto& ht = trunc[i];
            if (hf.coords != ht.coords) {
                rep.identical = false;
                if (rep.counterexamples.size() < 10) {
                    rep.counterexamples.push_back(IdentityCounterexample{
                        seed, static_cast<std::int64_t>(i) + 1, hf.coords, ht.coords});
                }
            } else if (i < rec.transcript.rounds.size()) {
                if (analyst.next_query(ht).id != rec.transcript.rounds[i].query.id) {
                    rep.identical = false;
                    ++rep.query_mismatches;
                }
            }
        }
    }
    if (!rep.identical) {
        rep.note = "grid identity violated; counterexamples carry seeds and rounds for replay";
    }
    return rep;
}

}  // namespace adlab
