#include "adlab/attacks.hpp"

#include <cmath>
#include <stdexcept>

#include "adlab/analyst.hpp"
#include "adlab/session.hpp"

namespace adlab {

AttackResult overfit_attack(std::size_t n, int rounds, std::uint64_t seed,
                            MechanismKind mechanism) {
    if (mechanism != MechanismKind::Empirical) {
        throw std::invalid_argument(
            "overfit_attack: requires the raw empirical mechanism; the attack consumes the "
            "full transcript and cannot be paired with rounded or noisy mechanisms");
    }
    if (rounds < 0) throw std::invalid_argument("overfit_attack: negative round count");
    const int dim = std::max(rounds, 1);
    const Distribution dist = BernoulliProduct{std::vector<double>(static_cast<std::size_t>(dim), 0.5)};
    const Dataset data = sample_dataset(dist, n, Rng::derive_seed(seed, 1));

    MajoritySignQuery boosted;
    boosted.coords.resize(static_cast<std::size_t>(rounds));
    boosted.signs.resize(static_cast<std::size_t>(rounds));
    for (int i = 0; i < rounds; ++i) {
        const Query qi = make_query(IdentityQuery{{i}});
        const auto a = empirical_answer(data, qi);
        boosted.coords[static_cast<std::size_t>(i)] = i;
        boosted.signs[static_cast<std::size_t>(i)] = a[0] >= 0.5 ? 1 : -1;
    }

    const Query final_q = make_query(std::move(boosted));
    const auto final_answer = empirical_answer(data, final_q);
    const auto mean = true_mean(dist, final_q);

    AttackResult out;
    out.n = n;
    out.rounds = rounds;
    out.final_true_mean = mean[0];
    out.final_error = std::abs(final_answer[0] - mean[0]);
    out.hoeffding_baseline = std::sqrt(std::log(2.0) / (2.0 * static_cast<double>(n)));
    return out;
}

CounterexampleReport counterexample_demo(int rounds, int bits, std::uint64_t seed,
                                         std::int64_t budget_words) {
    CounterexampleReport rep;
    rep.rounds = rounds;
    rep.bits = bits;
    if (rounds < 1 || bits < 1 || bits > 24) {
        throw std::invalid_argument("counterexample_demo: rounds >= 1 and bits in 1..24");
    }
    if (rounds > budget_words) {
        rep.precision_failure = true;
        rep.note = "encoding budget exhausted: rounds exceed the declared word budget";
        return rep;
    }

    const auto n = static_cast<std::size_t>((1u << bits) - 1);
    ExperimentConfig config;
    config.distribution =
        BernoulliProduct{std::vector<double>(static_cast<std::size_t>(rounds), 0.5)};
    config.n = n;
    config.rounds = rounds;
    config.seed = seed;
    AnalystSpec spec;
    spec.family = BijectionFamily{bits, rounds};
    spec.d = 1;
    spec.d_q = 1;
    spec.delta = 0.0;
    config.analyst = spec;
    config.mechanism.kind = MechanismKind::Empirical;
    config.mechanism.d_q = 1;

    const SessionRecord rec = run_session(config);
    Analyst analyst(spec);
    const auto decoded = analyst.decode_transcript(rec.trajectory.back());
    if (decoded.size() != rec.transcript.rounds.size()) {
        rep.exact = false;
        rep.mismatches = rounds;
        rep.note = "decoded transcript has the wrong length";
        return rep;
    }
    rep.exact = true;
    for (std::size_t i = 0; i < decoded.size(); ++i) {
        // answers are k/n with n = 2^bits - 1, so the stored words are lossless
        if (decoded[i][0] != rec.transcript.rounds[i].answer[0]) {
            rep.exact = false;
            ++rep.mismatches;
        }
    }
    return rep;
}

InterleaveDemoReport interleave_demo(double lambda, int digits, int rounds, double grid_delta,
                                     std::uint64_t seed) {
    InterleaveDemoReport rep;
    rep.rounds = rounds;
    rep.digits = digits;

    auto run = [&](double delta) {
        ExperimentConfig config;
        // n = 1000 keeps empirical answers exactly representable at >= 3 decimals
        config.distribution = UniformBox::unit(static_cast<std::size_t>(rounds));
        config.n = 1000;
        config.rounds = rounds;
        config.seed = seed;
        AnalystSpec spec;
        spec.family = InterleaveFamily{digits, lambda, 1.0, rounds};
        spec.d = 1;
        spec.d_q = 1;
        spec.delta = delta;
        config.analyst = spec;
        config.mechanism.kind = MechanismKind::Empirical;
        config.mechanism.d_q = 1;
        return run_session(config);
    };

    auto count_mismatches = [&](const SessionRecord& rec) {
        Analyst analyst(rec.config.analyst);
        int mismatches = 0;
        try {
            const auto decoded = analyst.decode_transcript(rec.trajectory.back());
            for (std::size_t i = 0; i < rec.transcript.rounds.size(); ++i) {
                const auto truth =
                    DecimalFraction::from_double(rec.transcript.rounds[i].answer[0], digits);
                if (i >= decoded.size() ||
                    DecimalFraction::from_double(clamp01(decoded[i][0]), digits) != truth) {
                    ++mismatches;
                }
            }
        } catch (const std::invalid_argument&) {
            mismatches = static_cast<int>(rec.transcript.rounds.size());
        }
        return mismatches;
    };

    const SessionRecord continuous = run(0.0);
    rep.continuous_exact = count_mismatches(continuous) == 0;

    const SessionRecord grid = run(grid_delta);
    rep.grid_mismatches = count_mismatches(grid);
    rep.grid_recovered = rep.grid_mismatches == 0;
    if (!rep.continuous_exact) rep.note = "continuous recovery failed";
    return rep;
}

}  // namespace adlab
