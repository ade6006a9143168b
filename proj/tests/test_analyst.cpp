#include <doctest.h>

#include <cmath>

#include "adlab/analyst.hpp"
#include "adlab/instances.hpp"
#include "adlab/json_io.hpp"
#include "helpers.hpp"

using namespace adlab;
using adlab::testing::scalar_linear;

TEST_CASE("bellman iteration on the one-armed instance") {
    MdpSpec mdp;
    mdp.n_states = 1;
    mdp.n_actions = 1;
    mdp.transition = {1.0};
    mdp.reward = {0.6};
    mdp.discount = 0.9;
    validate_mdp(mdp);
    std::vector<double> h{0.0};
    const std::vector<double> r{0.6};
    h = bellman_step(h, r, mdp);
    CHECK(h[0] == doctest::Approx(0.6));
    h = bellman_step(h, r, mdp);
    CHECK(h[0] == doctest::Approx(1.14));
    for (int i = 0; i < 600; ++i) h = bellman_step(h, r, mdp);
    CHECK(h[0] == doctest::Approx(6.0).epsilon(1e-9));  // 0.6 / (1 - 0.9)

    std::vector<double> zero{0.0};
    zero = bellman_step(zero, std::vector<double>{0.0}, mdp);
    CHECK(zero[0] == 0.0);
}

TEST_CASE("bellman operator is gamma-contractive in l_inf on random MDPs") {
    Rng rng(17);
    for (int inst = 0; inst < 30; ++inst) {
        const int S = 2 + static_cast<int>(rng.uniform_int(0, 6));
        const int A = 1 + static_cast<int>(rng.uniform_int(0, 3));
        const double gamma = 0.3 + 0.65 * rng.uniform01();
        const MdpSpec mdp = make_random_mdp(S, A, gamma, rng.next_u64());
        std::vector<double> r(static_cast<std::size_t>(S) * A);
        for (auto& x : r) x = rng.uniform01();
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> h1(static_cast<std::size_t>(S)), h2(h1);
            for (std::size_t i = 0; i < h1.size(); ++i) {
                h1[i] = 10.0 * rng.uniform01() - 5.0;
                h2[i] = 10.0 * rng.uniform01() - 5.0;
            }
            const auto o1 = bellman_step(h1, r, mdp);
            const auto o2 = bellman_step(h2, r, mdp);
            const double num = linf_distance(o1, o2);
            const double den = linf_distance(h1, h2);
            if (den > 1e-12) CHECK(num <= gamma * den + 1e-12);
        }
    }
}

TEST_CASE("reward estimates") {
    std::vector<DataPoint> tuples{{1, 1, 0.5, 0}, {1, 1, 0.7, 0}, {0, 1, 0.9, 1}};
    CHECK(reward_estimate(tuples, 1, 1) == doctest::Approx(0.6));
    CHECK(reward_estimate(tuples, 2, 0) == 0.0);
    std::vector<DataPoint> flat{{0, 0, 0.3, 0}, {1, 0, 0.3, 1}, {0, 0, 0.3, 0}};
    CHECK(reward_estimate(flat, 0, 0) == doctest::Approx(0.3));
}

TEST_CASE("gradient descent steps match hand iterations") {
    const std::vector<double> h1{1.0}, g1{1.0};
    CHECK(gd_step_a(h1, g1, 1, StepSchedule::constant(0.5))[0] == doctest::Approx(0.5));
    CHECK(gd_step_a(h1, std::vector<double>{0.0}, 3, StepSchedule::constant(0.5))[0] ==
          doctest::Approx(1.0));

    // quadratic 1/2 (h - 0.5)^2, h0 = 0, eta_t = 0.5^t: h1 = 0.25
    LossSpec quad;
    const auto grad0 = loss_gradient(quad, std::vector<double>{0.0}, DataPoint{0.5});
    CHECK(grad0[0] == doctest::Approx(-0.5));
    const auto h_next =
        gd_step_a(std::vector<double>{0.0}, grad0, 1, StepSchedule::exponential(1.0, 0.5));
    CHECK(h_next[0] == doctest::Approx(0.25));

    // type B: beta = mu = 1, eta = 0.5 -> lambda = 0.75; mean-0.5 data iterates 0.25, 0.375
    CHECK(gd_b_lambda(0.5, quad) == doctest::Approx(0.75));
    std::vector<double> h{0.0};
    for (double expected : {0.25, 0.375}) {
        const auto grad = loss_gradient(quad, h, DataPoint{0.5});
        h = gd_step_b(h, grad, 0.5, quad);
        CHECK(h[0] == doctest::Approx(expected));
    }
    CHECK_NOTHROW(gd_step_b(h, std::vector<double>{0.1}, 1.0, quad));  // boundary eta
    CHECK_THROWS_AS(gd_step_b(h, std::vector<double>{0.1}, 1.01, quad), std::invalid_argument);
}

TEST_CASE("gd_step_b contraction on random quadratics stays below the declared lambda") {
    Rng rng(23);
    for (int inst = 0; inst < 50; ++inst) {
        const int d = 1 + static_cast<int>(rng.uniform_int(0, 3));
        const double mu = 0.2 + rng.uniform01();
        const double beta = mu + rng.uniform01();
        // random rotation of a diagonal with eigenvalues in [mu, beta]
        Matrix q = random_orthogonal(static_cast<std::size_t>(d), rng);
        std::vector<double> eig(static_cast<std::size_t>(d));
        for (auto& e : eig) e = mu + (beta - mu) * rng.uniform01();
        eig[0] = mu;
        if (d > 1) eig[1] = beta;
        Matrix hess(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                double acc = 0.0;
                for (int k = 0; k < d; ++k) {
                    acc += q(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) *
                           eig[static_cast<std::size_t>(k)] *
                           q(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
                }
                hess(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = acc;
            }
        }
        LossSpec loss;
        loss.kind = LossKind::Quadratic;
        loss.beta = beta;
        loss.mu = mu;
        loss.hessian = hess;
        const double eta = (0.3 + 0.7 * rng.uniform01()) * 2.0 / (beta + mu);
        const double lambda = gd_b_lambda(eta, loss);
        const DataPoint x(static_cast<std::size_t>(d), 0.3);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<double> ha(static_cast<std::size_t>(d)), hb(ha);
            for (std::size_t i = 0; i < ha.size(); ++i) {
                ha[i] = 4.0 * rng.uniform01() - 2.0;
                hb[i] = 4.0 * rng.uniform01() - 2.0;
            }
            const auto sa = gd_step_b(ha, loss_gradient(loss, ha, x), eta, loss);
            const auto sb = gd_step_b(hb, loss_gradient(loss, hb, x), eta, loss);
            const double num = lp_distance(std::span<const double>(sa), sb, NormSpec::l2());
            const double den = lp_distance(std::span<const double>(ha), hb, NormSpec::l2());
            if (den > 1e-9) CHECK(num <= lambda * den + 1e-12);
        }
    }
}

TEST_CASE("step arithmetic and normalization") {
    // scalar linear A=0.5, B=1: psi(0, 0.5) = 0.5 then psi(0.5, 0.5) = 0.75
    Analyst lin(scalar_linear(0.5, 1.0, 1e-6));
    AnalystState s = lin.initial_state();
    s = lin.step(s, std::vector<double>{0.5});
    CHECK(s.h[0] == doctest::Approx(0.5).epsilon(1e-9));
    s = lin.step(s, std::vector<double>{0.5});
    CHECK(s.h[0] == doctest::Approx(0.75).epsilon(1e-9));

    // psi(0, neutral) = 0 for every non-adversarial family
    std::vector<AnalystSpec> specs;
    specs.push_back(scalar_linear(0.5, 1.0, 0.0));
    specs.push_back(make_random_progressive_linear(3, 2, 0.6, NormSpec::l2(), 0.0, 4, 5));
    specs.push_back(make_random_type_b_linear(3, 0.6, 10.0, 0.0, 4, 6));
    specs.push_back(make_type_a_gd(2, StepSchedule::exponential(0.5, 0.5), 1.0, 0.0));
    specs.push_back(make_random_rnn(3, 2, 0.7, 0.0, 4, 7));
    specs.push_back(make_bellman_analyst(make_random_mdp(3, 2, 0.9, 8), 0.0));
    {
        AnalystSpec st;
        st.family = StackingFamily{1.0, 8, 2, 4};
        st.d = 16;
        st.d_q = 2;
        specs.push_back(st);
    }
    for (const auto& spec : specs) {
        Analyst a(spec);
        AnalystState zero = a.initial_state();
        const auto next = a.step(zero, a.neutral_answer());
        for (double v : next.h) CHECK(v == doctest::Approx(0.0).epsilon(1e-15));
    }

    CHECK_THROWS_AS(lin.step(s, std::vector<double>{0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("equal states at the same round produce identical query ids") {
    const auto spec = make_random_progressive_linear(4, 2, 0.5, NormSpec::l2(), 1e-3, 4, 42);
    Analyst a(spec);
    Rng rng(9);
    for (int i = 0; i < 1000; ++i) {
        AnalystState s1;
        s1.round = rng.uniform_int(1, 64);
        s1.h.resize(4);
        for (auto& x : s1.h) x = 2.0 * rng.uniform01() - 1.0;
        const GridState g = quantize(s1.h, 1e-3);
        s1.coords = g.coords;
        s1.h = g.values();
        AnalystState s2 = s1;
        CHECK(a.next_query(s1).id == a.next_query(s2).id);
    }
}

TEST_CASE("answer linearity identity for linear-in-answer families") {
    Rng rng(12);
    const auto lin_spec = make_random_type_b_linear(3, 0.5, 10.0, 0.0, 4, 99);
    Analyst lin(lin_spec);
    LossSpec quad;
    AnalystSpec gdb_spec;
    gdb_spec.family = GdbFamily{quad, 0.4, 2.0, 10.0};
    gdb_spec.d = gdb_spec.d_q = 3;
    Analyst gd(gdb_spec);
    for (const Analyst* a : {&lin, &gd}) {
        REQUIRE(a->is_linear_in_answer());
        const Matrix b = a->answer_matrix(1);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> h(3), ans(3), xi(3);
            for (auto& v : h) v = 4.0 * rng.uniform01() - 2.0;
            for (auto& v : ans) v = rng.uniform01();
            for (auto& v : xi) v = rng.gauss(0.3);
            const auto direct = a->transition(h, 1, add(ans, xi));
            const auto split = add(a->transition(h, 1, ans), matvec(b, xi));
            CHECK(linf_distance(direct, split) < 1e-12);
        }
    }
}

TEST_CASE("interleaving digits") {
    CHECK(interleave(0.12, 0.34, 2) == doctest::Approx(0.1324).epsilon(1e-12));
    CHECK(interleave(0.0, 0.0, 3) == 0.0);
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const int digits = 1 + static_cast<int>(rng.uniform_int(0, 5));
        const double scale = std::pow(10.0, digits);
        const double a = std::floor(rng.uniform01() * scale) / scale;
        const double h = std::floor(rng.uniform01() * scale) / scale;
        const auto [ra, rh] = de_interleave(interleave(a, h, digits), digits);
        CHECK(ra == doctest::Approx(a).epsilon(1e-12));
        CHECK(rh == doctest::Approx(h).epsilon(1e-12));
    }
    CHECK_THROWS_AS(interleave(0.5, 0.5, 15), std::invalid_argument);
}

TEST_CASE("stacking analyst stores scaled answers and decodes them") {
    AnalystSpec spec;
    spec.family = StackingFamily{1.0, 4, 1, 4};
    spec.d = 4;
    spec.d_q = 1;
    Analyst a(spec);
    AnalystState s = a.initial_state();
    for (double v : {0.5, 0.25, 1.0}) s = a.step(s, std::vector<double>{v});
    CHECK(s.h[0] == doctest::Approx(0.5));
    CHECK(s.h[1] == doctest::Approx(0.25));
    CHECK(s.h[2] == doctest::Approx(1.0));
    CHECK(s.h[3] == 0.0);
    const auto decoded = a.decode_transcript(s);
    REQUIRE(decoded.size() == 3);
    CHECK(decoded[0][0] == doctest::Approx(0.5));
    CHECK(decoded[2][0] == doctest::Approx(1.0));
    // capacity exhaustion is an explicit failure, not silent corruption
    s = a.step(s, std::vector<double>{0.1});
    CHECK_THROWS_AS(a.step(s, std::vector<double>{0.1}), std::invalid_argument);
}

TEST_CASE("interleave adversary round-trips and bijection adversary is bit-exact") {
    AnalystSpec il;
    il.family = InterleaveFamily{4, 1.0, 1.0, 4};
    il.d = 1;
    il.d_q = 1;
    Analyst a(il);
    AnalystState s = a.initial_state();
    s = a.step(s, std::vector<double>{0.1234});
    const auto dec = a.decode_transcript(s);
    REQUIRE(dec.size() == 1);
    CHECK(dec[0][0] == doctest::Approx(0.1234).epsilon(1e-12));

    AnalystSpec bj;
    bj.family = BijectionFamily{16, 4};
    bj.d = 1;
    bj.d_q = 1;
    Analyst b(bj);
    AnalystState sb = b.initial_state();
    std::vector<double> answers;
    Rng rng(77);
    for (int t = 0; t < 20; ++t) {
        const double v = static_cast<double>(rng.uniform_int(0, 65535)) / 65535.0;
        answers.push_back(v);
        sb = b.step(sb, std::vector<double>{v});
    }
    const auto got = b.decode_transcript(sb);
    REQUIRE(got.size() == answers.size());
    for (std::size_t i = 0; i < answers.size(); ++i) CHECK(got[i][0] == answers[i]);
}

TEST_CASE("verify_class confirms the declared constants") {
    // scalar linear A=0.5, B=1
    {
        Analyst a(scalar_linear(0.5, 1.0, 1e-3));
        const auto rep = verify_class(a, 500, 1);
        CHECK(rep.applicable);
        CHECK(rep.violations == 0);
        CHECK(rep.max_state_ratio <= 0.5 + 1e-9);
    }
    // Bellman, gamma = 0.9, l_inf
    {
        Analyst a(make_bellman_analyst(make_random_mdp(4, 3, 0.9, 21), 0.0));
        const auto rep = verify_class(a, 400, 2);
        CHECK(rep.violations == 0);
        CHECK(rep.max_state_ratio <= 0.9 + 1e-9);
    }
    // gd_step_b quadratic beta=mu=1, eta=0.5: declared lambda 0.75, true factor 0.5
    {
        LossSpec quad;
        AnalystSpec spec;
        spec.family = GdbFamily{quad, 0.5, 2.0, 8.0};
        spec.d = spec.d_q = 2;
        Analyst a(spec);
        const Dataset data = sample_dataset(UniformBox::unit(2), 100, 5);
        const auto rep = verify_class(a, 400, 3, &data.points);
        CHECK(rep.violations == 0);
        CHECK(rep.max_empirical_ratio <= 0.75 + 1e-9);
        CHECK(rep.max_empirical_ratio <= 0.5 + 1e-9);
    }
    // type B random instance with its probe data
    {
        const auto spec = make_random_type_b_linear(3, 0.7, 10.0, 0.0, 4, 31);
        Analyst a(spec);
        const Dataset data = sample_dataset(UniformBox::unit(4), 200, 6);
        const auto rep = verify_class(a, 300, 4, &data.points);
        CHECK(rep.violations == 0);
        CHECK(rep.max_empirical_ratio <= 0.7 + 1e-9);
    }
    // adversaries are reported as out of scope, not verified
    {
        AnalystSpec bj;
        bj.family = BijectionFamily{8, 2};
        bj.d = bj.d_q = 1;
        Analyst a(bj);
        const auto rep = verify_class(a, 10, 5);
        CHECK_FALSE(rep.applicable);
        CHECK(rep.violations == 0);
    }
}

TEST_CASE("analyst specs survive a json round-trip") {
    for (const auto& spec :
         {make_random_progressive_linear(3, 2, 0.4, NormSpec::l1(), 1e-3, 4, 61),
          make_random_type_b_linear(2, 0.6, 10.0, 1e-3, 4, 62),
          make_type_a_gd(2, StepSchedule::exponential(0.5, 0.5), 1.0, 1e-2),
          make_bellman_analyst(make_random_mdp(2, 2, 0.8, 63), 1e-3)}) {
        const auto j = analyst_spec_to_json(spec);
        const AnalystSpec back = analyst_spec_from_json(j);
        CHECK(back.d == spec.d);
        CHECK(back.d_q == spec.d_q);
        CHECK(back.delta == spec.delta);
        CHECK(back.describe() == spec.describe());
        Analyst a1(spec), a2(back);
        const auto s1 = a1.initial_state();
        CHECK(a1.next_query(s1).id == a2.next_query(s1).id);
    }
}
