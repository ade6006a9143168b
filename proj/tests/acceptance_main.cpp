// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Thresholds and tolerances are pinned here, frozen from the pilot
// protocol (see the pilot CLI subcommand).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "adlab/attacks.hpp"
#include "adlab/instances.hpp"
#include "adlab/mechanism.hpp"
#include "adlab/privacy.hpp"
#include "adlab/session.hpp"
#include "adlab/sweep.hpp"
#include "adlab/truncation.hpp"

using namespace adlab;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, const std::function<bool(std::string&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %2d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                secs, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

ExperimentConfig progressive_config(double lambda, std::uint64_t instance_seed, double delta,
                                    int d, int d_q, std::int64_t rounds, std::size_t n,
                                    bool dense = false) {
    ExperimentConfig config;
    config.distribution = UniformBox::unit(static_cast<std::size_t>(d_q));
    config.n = n;
    config.rounds = rounds;
    config.mechanism.kind = MechanismKind::RoundedEmpirical;
    config.mechanism.round_eps = 1.0;
    config.mechanism.d_q = d_q;
    config.analyst = make_random_progressive_linear(d, d_q, lambda, NormSpec::l2(), delta, d_q,
                                                    instance_seed, dense);
    return config;
}

bool run_criterion_1(std::string& detail) {
    // exact grid identity at k = depth_progressive(...).k_int, t <= 500, 20 seeds
    std::int64_t checked = 0;
    for (const double lambda : {0.3, 0.6, 0.9}) {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            auto config = progressive_config(lambda, 7000 + seed * 13 + std::uint64_t(lambda * 10),
                                             1e-3, 4, 2, 500, 400);
            const IdentityReport rep = identity_depth_check(config, {seed});
            checked += rep.rounds_checked;
            if (!rep.identical) {
                detail = "lambda=" + std::to_string(lambda) + " seed=" + std::to_string(seed) +
                         " k=" + std::to_string(rep.depth_k) + " violated";
                return false;
            }
        }
    }
    detail = "states checked: " + std::to_string(checked);
    return true;
}

bool run_criterion_2(std::string& detail) {
    // continuous progressive instances: gap <= lambda^k L C1/(1-lambda) + 1e-9
    Rng rng(4242);
    double worst_margin = -1e300;
    for (int inst = 0; inst < 1000; ++inst) {
        const double lambda = 0.05 + 0.9 * rng.uniform01();
        const int d = 2 + static_cast<int>(rng.uniform_int(0, 2));
        const int d_q = 1 + static_cast<int>(rng.uniform_int(0, 2));
        const NormSpec norm{rng.bernoulli(0.3) ? 1 : (rng.bernoulli(0.5) ? 2 : NormSpec::kInf)};
        ExperimentConfig config;
        config.distribution = UniformBox::unit(static_cast<std::size_t>(d_q));
        config.n = 25;
        config.rounds = 200;
        config.mechanism.kind = MechanismKind::RoundedEmpirical;
        config.mechanism.d_q = d_q;
        config.analyst = make_random_progressive_linear(d, d_q, lambda, norm, 0.0, d_q,
                                                        rng.next_u64(), rng.bernoulli(0.5));
        config.seed = rng.next_u64();
        const SessionRecord rec = run_session(config);
        const double c1 = ones_norm(static_cast<std::size_t>(d_q), norm);
        for (std::int64_t k = 1; k <= 20; ++k) {
            const auto trunc = truncated_replay(rec, {TruncationMode::ProgressiveLastK, k});
            const double bound = std::pow(lambda, static_cast<double>(k)) * c1 / (1.0 - lambda);
            for (std::int64_t t = 1; t <= 201; ++t) {
                const double gap = closeness_gap(rec.trajectory, trunc, t, norm);
                worst_margin = std::max(worst_margin, gap - bound);
                if (gap > bound + 1e-9) {
                    detail = "instance " + std::to_string(inst) + " k=" + std::to_string(k) +
                             " t=" + std::to_string(t) + " gap exceeds bound";
                    return false;
                }
            }
        }
    }
    char buf[80];
    std::snprintf(buf, sizeof(buf), "worst gap-bound margin %.3e", worst_margin);
    detail = buf;
    return true;
}

bool run_criterion_3(std::string& detail) {
    // type A freeze: declared eta_t = 0.5^t, Delta = 1e-2, d_q = 1 so C1 = 1
    // in every norm; perturbing a_t for t >= 7 leaves h_{t+1} unchanged.
    for (const int p : {1, 2, NormSpec::kInf}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            auto analyst = make_type_a_gd(1, StepSchedule::exponential(0.25, 0.5), 2.0, 1e-2);
            analyst.norm = NormSpec{p};
            const DepthResult k = class_depth(analyst);
            if (k.k_int != 7) {
                detail = "expected saturation depth 7, got " + std::to_string(k.k_int);
                return false;
            }
            ExperimentConfig config;
            config.distribution = UniformBox::unit(1);
            config.n = 200;
            config.rounds = 60;
            config.mechanism.kind = MechanismKind::Empirical;
            config.mechanism.d_q = 1;
            config.analyst = analyst;
            config.seed = seed;
            const SessionRecord rec = run_session(config);
            Analyst a(analyst);
            Rng rng(seed * 97);
            for (std::int64_t t = 7; t <= config.rounds; ++t) {
                const auto& state = rec.trajectory[static_cast<std::size_t>(t - 1)];
                const auto base =
                    a.step(state, rec.transcript.rounds[static_cast<std::size_t>(t - 1)].answer);
                for (int trial = 0; trial < 40; ++trial) {
                    const std::vector<double> perturbed{rng.uniform01()};
                    if (a.step(state, perturbed).coords != base.coords) {
                        detail = "freeze violated at t=" + std::to_string(t);
                        return false;
                    }
                }
            }
            // and the first-k truncation reproduces the full trajectory exactly
            const auto trunc = truncated_replay(rec, {TruncationMode::ConservativeAFirstK, 7});
            for (std::size_t i = 0; i < rec.trajectory.size(); ++i) {
                if (rec.trajectory[i].coords != trunc[i].coords) {
                    detail = "first-7 truncation diverged at index " + std::to_string(i);
                    return false;
                }
            }
        }
    }
    return true;
}

bool run_criterion_4(std::string& detail) {
    // (a) continuous shared-noise gap <= lambda^k D + 1e-9 for k in 1..15
    for (const double lambda : {0.4, 0.7}) {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            ExperimentConfig config;
            config.distribution = UniformBox::unit(3);
            config.n = 100;
            config.rounds = 150;
            config.mechanism.kind = MechanismKind::Gaussian;
            config.mechanism.sigma = 0.05;
            config.mechanism.d_q = 3;
            config.analyst =
                make_random_type_b_linear(3, lambda, 10.0, 0.0, 3, 500 + seed, false);
            config.seed = seed;
            const SessionRecord rec = run_session(config);
            for (std::int64_t k = 1; k <= 15; ++k) {
                const auto trunc =
                    truncated_replay(rec, {TruncationMode::ConservativeBLastK, k});
                const double bound = std::pow(lambda, static_cast<double>(k)) * 10.0;
                for (std::int64_t t = 1; t <= config.rounds + 1; ++t) {
                    if (closeness_gap(rec.trajectory, trunc, t, NormSpec::l2()) > bound + 1e-9) {
                        detail = "gap bound violated: lambda=" + std::to_string(lambda) +
                                 " k=" + std::to_string(k) + " t=" + std::to_string(t);
                        return false;
                    }
                }
            }
        }
    }
    // (b) grid identity at k = depth_conservative_b(...).k_int with shared noise
    for (const double lambda : {0.4, 0.7}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            ExperimentConfig config;
            config.distribution = UniformBox::unit(3);
            config.n = 200;
            config.rounds = 150;
            config.mechanism.kind = MechanismKind::Gaussian;
            config.mechanism.sigma = 0.05;
            config.mechanism.d_q = 3;
            config.analyst =
                make_random_type_b_linear(3, lambda, 10.0, 1e-3, 3, 900 + seed, false);
            const IdentityReport rep = identity_depth_check(config, {seed});
            if (!rep.identical) {
                detail = "identity violated: lambda=" + std::to_string(lambda) +
                         " seed=" + std::to_string(seed) + " k=" + std::to_string(rep.depth_k);
                return false;
            }
        }
    }
    return true;
}

bool run_criterion_5(std::string& detail) {
    // golden values at 1e-12 relative error against long-double re-derivations
    auto close = [](double got, long double want) {
        return std::abs(got - static_cast<double>(want)) <=
               1e-12 * std::max(1.0, std::abs(static_cast<double>(want)));
    };
    {
        const DpParams p = gaussian_dp(0.1, 100, 1, 1e-5);
        const long double want = sqrtl(2.0L * logl(1.25e5L)) / 10.0L;
        if (!close(p.alpha, want)) {
            detail = "gaussian_dp golden mismatch";
            return false;
        }
    }
    {
        const DpParams p = strong_compose(4, 0.1, 0.001, 0.01);
        const long double want = sqrtl(8.0L * logl(100.0L)) * 0.1L + 0.08L;
        if (!close(p.alpha, want) || !close(p.beta, 0.014L)) {
            detail = "strong_compose golden mismatch";
            return false;
        }
        const DpParams h = history_dp({0.1, 0.001}, make_depth(3.2), 0.01);
        if (h.alpha != p.alpha || h.beta != p.beta) {
            detail = "history_dp disagrees with strong_compose";
            return false;
        }
    }
    {
        if (!close(sigma_for(0.1, 0.05, 100, 2), 0.1L / sqrtl(2.0L * logl(80000.0L)))) {
            detail = "sigma_for golden mismatch";
            return false;
        }
    }
    {
        const auto k1 = depth_progressive(0.5, 1.0, 1.0, 0.01);
        const auto k2 = depth_progressive(0.9, 1.0, 1.0, 0.01);
        const long double w1 = logl(400.0L) / logl(2.0L);
        const long double w2 = logl(1.0L / (0.1L * 0.9L * 0.01L)) / logl(1.0L / 0.9L);
        if (!close(k1.k_real, w1) || k1.k_int != 9 || !close(k2.k_real, w2) || k2.k_int != 67) {
            detail = "depth_progressive golden mismatch";
            return false;
        }
        const auto kb = depth_conservative_b(0.5, 10.0, 0.01);
        if (!close(kb.k_real, logl(2000.0L) / logl(2.0L)) || kb.k_int != 11) {
            detail = "depth_conservative_b golden mismatch";
            return false;
        }
        const auto kc = depth_continuous(0.5, 10.0, 4, 1.0, 0.1);
        if (!close(kc.k_real, logl(200.0L) / logl(2.0L)) || kc.k_int != 8) {
            detail = "depth_continuous golden mismatch";
            return false;
        }
        const auto ka = depth_conservative_a(StepSchedule::exponential(1.0, 0.5), 0.01, 1.0, 1000);
        const auto ka2 = depth_conservative_a(StepSchedule::power(1.0, 1.0), 0.1, 1.0, 1000);
        if (ka.k_int != 7 || ka2.k_int != 11) {
            detail = "depth_conservative_a golden mismatch";
            return false;
        }
        if (plan_samples(0.1, 0.05, make_depth(9.0), 1, 100) != 644) {
            detail = "plan_samples golden mismatch";
            return false;
        }
    }
    // defining inequalities on 1000 random tuples
    Rng rng(31337);
    for (int i = 0; i < 1000; ++i) {
        const double lambda = 0.02 + 0.96 * rng.uniform01();
        const double lip = 0.1 + 5.0 * rng.uniform01();
        const double c1 = 1.0 + 3.0 * rng.uniform01();
        const double delta = std::pow(10.0, -1.0 - 3.0 * rng.uniform01());
        const auto kp = depth_progressive(lambda, lip, c1, delta);
        if (std::pow(lambda, double(kp.k_int)) * lip * c1 / (1.0 - lambda) >=
            delta * (1.0 + 1e-9)) {
            detail = "progressive depth inequality violated";
            return false;
        }
        const double radius = delta * (2.0 + 100.0 * rng.uniform01());
        const auto kb = depth_conservative_b(lambda, radius, delta);
        if (std::pow(lambda, double(kb.k_int)) * radius >= delta * (1.0 + 1e-9)) {
            detail = "type B depth inequality violated";
            return false;
        }
        const auto sched = StepSchedule::exponential(0.5 + rng.uniform01(),
                                                     0.3 + 0.6 * rng.uniform01());
        const auto ka = depth_conservative_a(sched, delta, c1, 100000);
        if (ka.saturated &&
            !(sched.eval(ka.k_int) < delta / c1 &&
              (ka.k_int == 1 || sched.eval(ka.k_int - 1) >= delta / c1))) {
            detail = "type A depth minimality violated";
            return false;
        }
    }
    return true;
}

bool run_criterion_6(std::string& detail) {
    const double eps = 0.1, delta = 0.1;
    const double sigma = sigma_for(eps, delta, 100, 2);
    Dataset data;
    for (int i = 0; i < 50; ++i) data.points.push_back({0.3, 0.6});
    MechanismSpec spec;
    spec.kind = MechanismKind::ClampedGaussian;
    spec.sigma = sigma;
    spec.seed = 424242;
    spec.d_q = 2;
    Mechanism mech(spec);
    const Query q = make_query(IdentityQuery{{0, 1}});
    const int rounds = 100000;
    int exceed = 0;
    for (int t = 0; t < rounds; ++t) {
        Round r;
        const auto a = mech.answer(data, q, r);
        if (linf_distance(a, r.empirical) >= eps) ++exceed;
    }
    const double rate = static_cast<double>(exceed) / rounds;
    const double budget = eps * delta;
    const double slack = 3.0 * std::sqrt(budget * (1.0 - budget) / rounds);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "rate %.2e vs eps*delta %.2e (+%.1e slack), sigma %.5f", rate,
                  budget, slack, sigma);
    detail = buf;
    return rate <= budget + slack;
}

bool run_criterion_7(std::string& detail) {
    // (a) progressive scaling shape
    {
        ExperimentConfig config =
            progressive_config(0.5, 97001, 1e-3, 4, 2, 10000, 10000);
        config.envelope_multiplier = 1.0;
        std::vector<std::uint64_t> seeds;
        for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
        const SweepTable table = scaling_sweep(config, {10, 100, 1000, 10000}, seeds, 2);
        double mean_small = 0.0, mean_large = 0.0;
        std::vector<double> lnt, mean_sq;
        for (const std::int64_t t : {10, 100, 1000, 10000}) {
            double m = 0.0;
            int cnt = 0;
            for (const auto& row : table.rows) {
                if (row.rounds == t) {
                    m += row.max_error;
                    ++cnt;
                    if (row.max_error > row.envelope) {
                        detail = "measured error exceeded the pinned envelope";
                        return false;
                    }
                }
            }
            m /= cnt;
            if (t == 10) mean_small = m;
            if (t == 10000) mean_large = m;
            lnt.push_back(std::log(static_cast<double>(t)));
            mean_sq.push_back(m * m);
        }
        const double ratio = mean_large / mean_small;
        const double slope = ls_slope(lnt, mean_sq);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "ratio %.2f (<=3), slope %.2e (>=0)", ratio, slope);
        detail = buf;
        if (!(ratio <= 3.0 && slope >= 0.0)) return false;
    }
    // (b) overfit attack scaling
    {
        const std::vector<std::int64_t> t_axis{50, 100, 200, 400, 800, 1600};
        std::vector<std::uint64_t> seeds;
        for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
        const SweepTable table = attack_sweep(400, t_axis, seeds, 2);
        std::vector<double> logt, logerr;
        double mean_at_200 = 0.0;
        for (const std::int64_t t : t_axis) {
            double m = 0.0;
            int cnt = 0;
            for (const auto& row : table.rows) {
                if (row.rounds == t) {
                    m += row.max_error;
                    ++cnt;
                }
            }
            m /= cnt;
            if (t == 200) mean_at_200 = m;
            logt.push_back(std::log(static_cast<double>(t)));
            logerr.push_back(std::log(std::max(1e-12, m)));
        }
        const double exponent = ls_slope(logt, logerr);
        const double baseline = std::sqrt(std::log(2.0) / 800.0);
        char buf[112];
        std::snprintf(buf, sizeof(buf), "%s; exponent %.3f (in [0.35,0.65]), mean@200 %.3f >= %.3f",
                      detail.c_str(), exponent, mean_at_200, 3.0 * baseline);
        detail = buf;
        return exponent >= 0.35 && exponent <= 0.65 && mean_at_200 >= 3.0 * baseline;
    }
}

bool run_criterion_8(std::string& detail) {
    const auto rep = counterexample_demo(20, 16, 20260808);
    detail = "mismatches " + std::to_string(rep.mismatches);
    return rep.exact && !rep.precision_failure;
}

bool run_criterion_9(std::string& detail) {
    const auto rep = interleave_demo(0.9, 6, 10, 1e-3, 4711);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "continuous exact: %d, grid mismatches: %d/%d",
                  rep.continuous_exact ? 1 : 0, rep.grid_mismatches, rep.rounds);
    detail = buf;
    return rep.continuous_exact && !rep.grid_recovered;
}

bool run_criterion_10(std::string& detail) {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        ExperimentConfig config;
        config.distribution = UniformBox::unit(2);
        config.n = 60;
        config.rounds = 40;
        config.mechanism.kind = MechanismKind::Gaussian;
        config.mechanism.sigma = 0.08;
        config.mechanism.d_q = 2;
        config.mechanism.split_noise = true;
        config.analyst = make_random_type_b_linear(2, 0.3 + 0.4 * ((seed % 7) / 7.0), 10.0, 0.0,
                                                   2, 3000 + seed, false, true);
        config.seed = seed;
        const auto rep = continuous_mode_session(config);
        worst = std::max(worst, rep.max_deviation);
        if (rep.max_deviation > 1e-12) {
            detail = "split identity deviation " + std::to_string(rep.max_deviation);
            return false;
        }
        if (!(rep.lambda_min > 0.0)) {
            detail = "lambda_min not positive";
            return false;
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "worst deviation %.2e", worst);
    detail = buf;
    return true;
}

bool run_criterion_11(std::string& detail) {
    // Bellman contraction on random MDPs
    Rng rng(991);
    for (int inst = 0; inst < 40; ++inst) {
        const int S = 2 + static_cast<int>(rng.uniform_int(0, 6));
        const int A = 1 + static_cast<int>(rng.uniform_int(0, 3));
        const double gamma = 0.3 + 0.65 * rng.uniform01();
        const MdpSpec mdp = make_random_mdp(S, A, gamma, rng.next_u64());
        std::vector<double> r(static_cast<std::size_t>(S) * A);
        for (auto& x : r) x = rng.uniform01();
        for (int trial = 0; trial < 60; ++trial) {
            std::vector<double> h1(static_cast<std::size_t>(S)), h2(h1);
            for (std::size_t i = 0; i < h1.size(); ++i) {
                h1[i] = 10.0 * rng.uniform01() - 5.0;
                h2[i] = 10.0 * rng.uniform01() - 5.0;
            }
            const double den = linf_distance(h1, h2);
            if (den < 1e-12) continue;
            const double num = linf_distance(bellman_step(h1, r, mdp), bellman_step(h2, r, mdp));
            if (num > gamma * den + 1e-12) {
                detail = "bellman contraction violated";
                return false;
            }
        }
    }
    // gd_step_b on random quadratics
    for (int inst = 0; inst < 40; ++inst) {
        const double mu = 0.2 + rng.uniform01();
        const double beta = mu + rng.uniform01();
        LossSpec loss;
        loss.beta = beta;
        loss.mu = mu;
        loss.hessian = Matrix::identity(2).scaled(mu);
        loss.hessian(1, 1) = beta;
        const double eta = (0.2 + 0.8 * rng.uniform01()) * 2.0 / (beta + mu);
        const double lambda = gd_b_lambda(eta, loss);
        const DataPoint x{0.4, 0.7};
        for (int trial = 0; trial < 60; ++trial) {
            std::vector<double> h1{4.0 * rng.uniform01() - 2.0, 4.0 * rng.uniform01() - 2.0};
            std::vector<double> h2{4.0 * rng.uniform01() - 2.0, 4.0 * rng.uniform01() - 2.0};
            const auto s1 = gd_step_b(h1, loss_gradient(loss, h1, x), eta, loss);
            const auto s2 = gd_step_b(h2, loss_gradient(loss, h2, x), eta, loss);
            const double den = lp_distance(std::span<const double>(h1), h2, NormSpec::l2());
            if (den < 1e-9) continue;
            const double num = lp_distance(std::span<const double>(s1), s2, NormSpec::l2());
            if (num > lambda * den + 1e-12) {
                detail = "gd_step_b contraction violated";
                return false;
            }
        }
    }
    // verify_class across every shipped family; type B probes need data of
    // the query's width
    const Dataset probe_data4 = sample_dataset(UniformBox::unit(4), 200, 17);
    const Dataset probe_data2 = sample_dataset(UniformBox::unit(2), 200, 18);
    std::vector<AnalystSpec> shipped;
    shipped.push_back(make_random_progressive_linear(4, 2, 0.6, NormSpec::l2(), 1e-3, 4, 41));
    shipped.push_back(make_random_progressive_linear(4, 2, 0.9, NormSpec::l2(), 0.0, 4, 42, true));
    shipped.push_back(make_random_rnn(3, 2, 0.7, 1e-3, 4, 43));
    shipped.push_back(make_bellman_analyst(make_random_mdp(4, 2, 0.85, 44), 0.0));
    shipped.push_back(make_type_a_gd(2, StepSchedule::exponential(0.25, 0.5), 1.0, 1e-2));
    {
        LossSpec quad;
        AnalystSpec gdb;
        gdb.family = GdbFamily{quad, 0.5, 2.0, 10.0};
        gdb.d = gdb.d_q = 2;
        shipped.push_back(gdb);
    }
    shipped.push_back(make_random_type_b_linear(3, 0.7, 10.0, 1e-3, 4, 45));
    {
        AnalystSpec st;
        st.family = StackingFamily{1.0, 16, 2, 4};
        st.d = 32;
        st.d_q = 2;
        shipped.push_back(st);
    }
    for (const auto& spec : shipped) {
        Analyst a(spec);
        const bool narrow = std::holds_alternative<GdbFamily>(spec.family) ||
                            std::holds_alternative<GdaFamily>(spec.family);
        const auto rep =
            verify_class(a, 600, 7, narrow ? &probe_data2.points : &probe_data4.points);
        if (!rep.applicable) continue;
        if (rep.violations != 0) {
            detail = "verify_class violations in " + rep.family;
            return false;
        }
    }
    return true;
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion(1, "progressive truncation identity at K(lambda), exact on the grid",
              run_criterion_1);
    criterion(2, "progressive closeness bound lambda^k L C1/(1-lambda)", run_criterion_2);
    criterion(3, "type A freeze beyond the saturation depth", run_criterion_3);
    criterion(4, "type B shared-noise closeness and grid identity", run_criterion_4);
    criterion(5, "accountant golden values and depth inequalities", run_criterion_5);
    criterion(6, "clamped gaussian sample accuracy at the calibrated sigma", run_criterion_6);
    criterion(7, "scaling separation: progressive log growth vs attack sqrt(t)", run_criterion_7);
    criterion(8, "window-1 attacker recovers the transcript bit-exactly", run_criterion_8);
    criterion(9, "interleaving analyst: exact off-grid, destroyed on-grid", run_criterion_9);
    criterion(10, "noise-splitting linearity identity in continuous mode", run_criterion_10);
    criterion(11, "analyst class verification across shipped families", run_criterion_11);
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
