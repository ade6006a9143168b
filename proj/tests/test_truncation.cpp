#include <doctest.h>

#include <cmath>

#include "adlab/instances.hpp"
#include "adlab/truncation.hpp"
#include "helpers.hpp"

using namespace adlab;
using adlab::testing::basic_config;
using adlab::testing::scalar_linear;

TEST_CASE("progressive replay reproduces the hand iteration") {
    // A = 0.5, B = 1, constant answers 0.5: states 0, 0.5, 0.75, 0.875
    auto config = basic_config(scalar_linear(0.5, 1.0, 0.0), MechanismKind::Empirical, 20, 3);
    const SessionRecord rec = run_session(config);
    REQUIRE(rec.trajectory.size() == 4);
    CHECK(rec.trajectory[3].h[0] == doctest::Approx(0.875));

    const auto trunc = truncated_replay(rec, {TruncationMode::ProgressiveLastK, 2});
    REQUIRE(trunc.size() == 4);
    // zeroed two rounds back, fed the recorded answers (0.5, 0.5)
    CHECK(trunc[3].h[0] == doctest::Approx(0.75));
    CHECK(closeness_gap(rec.trajectory, trunc, 4, NormSpec::l2()) == doctest::Approx(0.125));
}

TEST_CASE("k at least t reproduces the full trajectory exactly") {
    for (double delta : {0.0, 1e-4}) {
        auto config = basic_config(
            make_random_progressive_linear(3, 2, 0.7, NormSpec::l2(), delta, 4, 19, true),
            MechanismKind::Empirical, 30, 12);
        const SessionRecord rec = run_session(config);
        const auto trunc = truncated_replay(rec, {TruncationMode::ProgressiveLastK, 12});
        for (std::size_t i = 0; i < rec.trajectory.size(); ++i) {
            CHECK(linf_distance(rec.trajectory[i].h, trunc[i].h) == 0.0);
            CHECK(rec.trajectory[i].coords == trunc[i].coords);
        }
    }
}

TEST_CASE("lambda = 0 has one-step memory") {
    auto spec = scalar_linear(0.0, 1.0, 1e-3);
    auto config = basic_config(std::move(spec), MechanismKind::RoundedEmpirical, 40, 20);
    const SessionRecord rec = run_session(config);
    const auto trunc = truncated_replay(rec, {TruncationMode::ProgressiveLastK, 1});
    for (std::size_t i = 0; i < rec.trajectory.size(); ++i) {
        CHECK(rec.trajectory[i].coords == trunc[i].coords);
    }
    CHECK(class_depth(config.analyst).k_int == 1);
}

TEST_CASE("closeness bound holds on continuous progressive instances") {
    // lambda = 0.5, L = 1: gap at depth k is at most lambda^k L C1 / (1 - lambda)
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto config = basic_config(
            make_random_progressive_linear(4, 2, 0.5, NormSpec::l2(), 0.0, 4, seed, true),
            MechanismKind::Empirical, 60, 40, seed);
        const SessionRecord rec = run_session(config);
        const double c1 = ones_norm(2, NormSpec::l2());
        for (std::int64_t k : {1, 3, 5, 8}) {
            const auto trunc =
                truncated_replay(rec, {TruncationMode::ProgressiveLastK, k});
            const double bound = std::pow(0.5, static_cast<double>(k)) * c1 / 0.5;
            double prev_gap = std::numeric_limits<double>::infinity();
            (void)prev_gap;
            for (std::int64_t t = 1; t <= 41; ++t) {
                CHECK(closeness_gap(rec.trajectory, trunc, t, NormSpec::l2()) <= bound + 1e-9);
            }
        }
        // monotone improvement in k at fixed t
        double last = std::numeric_limits<double>::infinity();
        for (std::int64_t k : {1, 2, 4, 8, 16}) {
            const auto trunc = truncated_replay(rec, {TruncationMode::ProgressiveLastK, k});
            const double gap = closeness_gap(rec.trajectory, trunc, 41, NormSpec::l2());
            CHECK(gap <= last + 1e-12);
            last = gap;
        }
    }
}

TEST_CASE("type A truncation freezes at the saturation depth") {
    // declared eta_t = 0.5^t, Delta = 1e-2, d_q = 1 (C1 = 1 in every norm): K = 7
    auto analyst = make_type_a_gd(1, StepSchedule::exponential(0.25, 0.5), 2.0, 1e-2);
    auto config = basic_config(std::move(analyst), MechanismKind::Empirical, 50, 30);
    config.distribution = UniformBox::unit(1);
    const DepthResult k = class_depth(config.analyst);
    CHECK(k.k_int == 7);
    const SessionRecord rec = run_session(config);
    const auto trunc = truncated_replay(rec, {TruncationMode::ConservativeAFirstK, k.k_int});
    for (std::size_t i = 0; i < rec.trajectory.size(); ++i) {
        CHECK(rec.trajectory[i].coords == trunc[i].coords);
    }

    // perturbing a_t for t >= 7 leaves h_{t+1} unchanged, grid-exactly
    Analyst a(config.analyst);
    Rng rng(5);
    for (std::int64_t t = 7; t <= 29; ++t) {
        const auto& state = rec.trajectory[static_cast<std::size_t>(t - 1)];
        const auto base = a.step(state, rec.transcript.rounds[static_cast<std::size_t>(t - 1)].answer);
        for (int trial = 0; trial < 20; ++trial) {
            const std::vector<double> perturbed{rng.uniform01()};
            CHECK(a.step(state, perturbed).coords == base.coords);
        }
    }
    // and below the saturation depth the answer still matters somewhere
    bool any_change = false;
    for (int trial = 0; trial < 50 && !any_change; ++trial) {
        const auto& state = rec.trajectory[0];
        const std::vector<double> perturbed{rng.uniform01()};
        any_change = a.step(state, perturbed).coords !=
                     a.step(state, rec.transcript.rounds[0].answer).coords;
    }
    CHECK(any_change);
}

TEST_CASE("grid identity holds at the class depth for structured progressive instances") {
    auto config = basic_config(
        make_random_progressive_linear(4, 1, 0.5, NormSpec::linf(), 1e-2, 4, 7),
        MechanismKind::RoundedEmpirical, 100, 120);
    // d_q = 1 so C1 = 1; lambda = 0.5, Delta = 1e-2 gives the documented k = 9
    CHECK(class_depth(config.analyst).k_int == 9);
    const IdentityReport rep = identity_depth_check(config, {11, 12, 13});
    CHECK(rep.depth_k == 9);
    CHECK(rep.identical);
    CHECK(rep.query_mismatches == 0);
}

TEST_CASE("identity detector flags spectral-radius-heavy instances without throwing") {
    // dense orthogonal core at lambda = 0.9: the quantized composite misses
    // the identity at K(lambda) with high probability (the detector's job)
    auto config = basic_config(
        make_random_progressive_linear(4, 2, 0.9, NormSpec::l2(), 1e-3, 4, 3, true),
        MechanismKind::RoundedEmpirical, 200, 150);
    const IdentityReport rep = identity_depth_check(config, {1, 2});
    CHECK_FALSE(rep.identical);
    CHECK(rep.counterexamples.size() > 0);
    CHECK(rep.counterexamples.front().full_coords !=
          rep.counterexamples.front().truncated_coords);
}

TEST_CASE("type B replay shares the recorded noise and contracts") {
    auto analyst = make_random_type_b_linear(3, 0.6, 10.0, 0.0, 3, 77);
    auto config = basic_config(std::move(analyst), MechanismKind::Gaussian, 80, 40);
    config.mechanism.sigma = 0.05;
    const SessionRecord rec = run_session(config);
    for (std::int64_t k : {1, 4, 8, 12}) {
        const auto trunc = truncated_replay(rec, {TruncationMode::ConservativeBLastK, k});
        const double bound = std::pow(0.6, static_cast<double>(k)) * 10.0;
        for (std::int64_t t = 1; t <= 41; ++t) {
            CHECK(closeness_gap(rec.trajectory, trunc, t, NormSpec::l2()) <= bound + 1e-9);
        }
    }
}

TEST_CASE("type B replay without a noise log is rejected") {
    auto analyst = make_random_type_b_linear(2, 0.5, 10.0, 0.0, 2, 78);
    auto config = basic_config(std::move(analyst), MechanismKind::Gaussian, 30, 10);
    config.mechanism.sigma = 0.05;
    SessionRecord rec = run_session(config);
    for (auto& r : rec.transcript.rounds) r.noise.clear();
    CHECK_THROWS_AS(truncated_replay(rec, {TruncationMode::ConservativeBLastK, 3}),
                    std::invalid_argument);
}

TEST_CASE("replay modes are tied to analyst classes") {
    auto config = basic_config(scalar_linear(0.5, 1.0, 0.0), MechanismKind::Empirical, 10, 5);
    const SessionRecord rec = run_session(config);
    CHECK_THROWS_AS(truncated_replay(rec, {TruncationMode::ConservativeAFirstK, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(truncated_replay(rec, {TruncationMode::ProgressiveLastK, 0}),
                    std::invalid_argument);
    CHECK(default_mode_for(AnalystClass::Progressive) == TruncationMode::ProgressiveLastK);
    CHECK_THROWS_AS(default_mode_for(AnalystClass::Adversarial), std::invalid_argument);
}
