#include "adlab/instances.hpp"

#include <cmath>
#include <stdexcept>

namespace adlab {
namespace {

Matrix permuted_signed(const Matrix& t, Rng& rng) {
    const std::size_t d = t.rows;
    std::vector<std::size_t> perm(d);
    for (std::size_t i = 0; i < d; ++i) perm[i] = i;
    for (std::size_t i = d; i-- > 1;) {
        std::swap(perm[i], perm[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i)))]);
    }
    std::vector<double> sign(d);
    for (auto& s : sign) s = rng.bernoulli(0.5) ? 1.0 : -1.0;
    Matrix out(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            out(perm[i], perm[j]) = sign[i] * sign[j] * t(i, j);
        }
    }
    return out;
}

ThresholdProbeMap random_threshold_probe(int d, int d_q, int data_dim, Rng& rng) {
    ThresholdProbeMap map;
    map.weights.resize(static_cast<std::size_t>(d));
    for (auto& w : map.weights) w = 0.2 + 0.6 * rng.uniform01();
    map.mult.resize(static_cast<std::size_t>(d_q));
    map.phase.resize(static_cast<std::size_t>(d_q));
    map.coords.resize(static_cast<std::size_t>(d_q));
    for (int j = 0; j < d_q; ++j) {
        map.mult[static_cast<std::size_t>(j)] = 1.3 + 0.7 * rng.uniform01() + j;
        map.phase[static_cast<std::size_t>(j)] = rng.uniform01();
        map.coords[static_cast<std::size_t>(j)] = j % data_dim;
    }
    return map;
}

}  // namespace

Matrix random_structured_contraction(std::size_t d, double lambda, Rng& rng) {
    if (lambda == 0.0) return Matrix(d, d);
    Matrix t(d, d);
    bool any = false;
    for (std::size_t i = 1; i < d; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (rng.bernoulli(0.7)) {
                t(i, j) = rng.gauss();
                any = true;
            }
        }
    }
    if (!any && d > 1) {
        t(1, 0) = 1.0;
    } else if (d == 1) {
        // A 1-dimensional strictly triangular map is identically zero; the
        // one-step-memory analyst.
        return Matrix(1, 1);
    }
    Matrix a = permuted_signed(t, rng);
    const double norm = op_norm_2(a);
    if (norm < 1e-12) return Matrix(d, d);
    return a.scaled(lambda / norm);
}

Matrix random_dense_contraction(std::size_t d, double lambda, Rng& rng) {
    return random_orthogonal(d, rng).scaled(lambda);
}

AnalystSpec make_random_progressive_linear(int d, int d_q, double lambda, NormSpec norm,
                                           double delta, int data_dim, std::uint64_t seed,
                                           bool dense_core) {
    Rng rng(seed);
    LinearFamily fam;
    fam.cls = AnalystClass::Progressive;
    fam.lambda = lambda;
    fam.answer_lip = 1.0;
    // contraction and Lipschitz constants are declared in the instance's norm
    Matrix core = dense_core
                      ? random_dense_contraction(static_cast<std::size_t>(d), lambda, rng)
                      : random_structured_contraction(static_cast<std::size_t>(d), lambda, rng);
    const double core_norm = op_norm(core, norm);
    fam.state_matrix = core_norm > 1e-12 ? core.scaled(lambda / core_norm) : core;
    Matrix b(static_cast<std::size_t>(d), static_cast<std::size_t>(d_q));
    for (auto& x : b.data) x = rng.gauss();
    const double bn = op_norm(b, norm);
    fam.answer_matrix = b.scaled(bn > 1e-12 ? 1.0 / bn : 0.0);
    fam.query_map = random_threshold_probe(d, d_q, data_dim, rng);
    AnalystSpec spec;
    spec.family = std::move(fam);
    spec.d = d;
    spec.d_q = d_q;
    spec.norm = norm;
    spec.delta = delta;
    spec.validate();
    return spec;
}

AnalystSpec make_random_type_b_linear(int d, double lambda, double radius, double delta,
                                      int data_dim, std::uint64_t seed, bool dense_core,
                                      bool definite_answer_matrix) {
    if (data_dim < d) throw std::invalid_argument("make_random_type_b_linear: data_dim < d");
    Rng rng(seed);
    const auto dd = static_cast<std::size_t>(d);

    // target closed loop T = A + B S with ||T||_2 = lambda
    Matrix target = dense_core ? random_dense_contraction(dd, lambda, rng)
                               : random_structured_contraction(dd, lambda, rng);

    Matrix b(dd, dd);
    if (definite_answer_matrix) {
        for (std::size_t i = 0; i < dd; ++i) b(i, i) = 0.5 + 1.5 * rng.uniform01();
    } else {
        for (auto& x : b.data) x = rng.gauss();
        const double bn = op_norm_2(b);
        b = b.scaled(0.5 / std::max(1e-12, bn));
        for (std::size_t i = 0; i < dd; ++i) b(i, i) += 0.7;  // keep B invertible
    }

    // probe state map S sized so the affine query never clips inside the ball
    Matrix s_map(dd, dd);
    for (auto& x : s_map.data) x = rng.gauss();
    double row_sum = op_norm_inf(s_map);
    const double s_scale = 0.25 / std::max(1e-12, row_sum * radius);
    s_map = s_map.scaled(s_scale);

    // A = T - B S; type B requires ||A||_op <= 1
    Matrix bs(dd, dd);
    for (std::size_t i = 0; i < dd; ++i) {
        for (std::size_t j = 0; j < dd; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < dd; ++k) acc += b(i, k) * s_map(k, j);
            bs(i, j) = acc;
        }
    }
    Matrix a(dd, dd);
    for (std::size_t i = 0; i < dd * dd; ++i) a.data[i] = target.data[i] - bs.data[i];
    const double an = op_norm_2(a);
    if (an > 1.0) {
        // shrink the probe feedback until A fits the unit ball
        const double shrink = 0.9 / an;
        s_map = s_map.scaled(shrink);
        for (std::size_t i = 0; i < dd * dd; ++i) {
            bs.data[i] *= shrink;
            a.data[i] = target.data[i] - bs.data[i];
        }
        if (op_norm_2(a) > 1.0 + 1e-9) {
            throw std::logic_error("make_random_type_b_linear: could not fit ||A|| <= 1");
        }
    }

    LinearFamily fam;
    fam.cls = AnalystClass::ConservativeB;
    fam.lambda = lambda;
    fam.state_matrix = std::move(a);
    fam.answer_matrix = std::move(b);
    fam.radius = radius;
    AffineProbeMap probe;
    probe.state_map = std::move(s_map);
    probe.base.assign(dd, 0.5);
    probe.coupling.assign(dd, 0.4);
    probe.coords.resize(dd);
    for (std::size_t j = 0; j < dd; ++j) probe.coords[j] = static_cast<int>(j);
    probe.data_dim = data_dim;
    fam.query_map = std::move(probe);
    fam.answer_lip = op_norm_2(fam.answer_matrix);

    AnalystSpec spec;
    spec.family = std::move(fam);
    spec.d = d;
    spec.d_q = d;
    spec.norm = NormSpec::l2();
    spec.delta = delta;
    spec.validate();
    return spec;
}

AnalystSpec make_type_a_gd(int d, const StepSchedule& weight_steps, double grad_bound,
                           double delta) {
    GdaFamily fam;
    fam.loss.kind = LossKind::Quadratic;
    fam.loss.beta = 1.0;
    fam.loss.mu = 1.0;
    fam.steps = weight_steps;
    fam.grad_bound = grad_bound;
    AnalystSpec spec;
    spec.family = std::move(fam);
    spec.d = d;
    spec.d_q = d;
    spec.norm = NormSpec::l2();
    spec.delta = delta;
    spec.validate();
    return spec;
}

MdpSpec make_random_mdp(int n_states, int n_actions, double discount, std::uint64_t seed) {
    Rng rng(seed);
    MdpSpec mdp;
    mdp.n_states = n_states;
    mdp.n_actions = n_actions;
    mdp.discount = discount;
    mdp.transition.resize(static_cast<std::size_t>(n_states) * n_actions * n_states);
    mdp.reward.resize(static_cast<std::size_t>(n_states) * n_actions);
    for (int i = 0; i < n_states; ++i) {
        for (int a = 0; a < n_actions; ++a) {
            double sum = 0.0;
            std::vector<double> row(static_cast<std::size_t>(n_states));
            for (auto& p : row) {
                p = -std::log(rng.uniform01_open());
                sum += p;
            }
            for (int j = 0; j < n_states; ++j) {
                mdp.transition[(static_cast<std::size_t>(i) * n_actions + a) * n_states + j] =
                    row[static_cast<std::size_t>(j)] / sum;
            }
            mdp.reward[static_cast<std::size_t>(i) * n_actions + a] = rng.uniform01();
        }
    }
    validate_mdp(mdp);
    return mdp;
}

AnalystSpec make_bellman_analyst(const MdpSpec& mdp, double delta) {
    AnalystSpec spec;
    spec.d = mdp.n_states;
    spec.d_q = 2 * mdp.n_states * mdp.n_actions;
    spec.family = BellmanFamily{mdp};
    spec.norm = NormSpec::linf();
    spec.delta = delta;
    spec.validate();
    return spec;
}

AnalystSpec make_random_rnn(int d, int d_q, double lambda, double delta, int data_dim,
                            std::uint64_t seed) {
    Rng rng(seed);
    RnnFamily fam;
    fam.lambda = lambda;
    Matrix w(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (auto& x : w.data) x = rng.gauss();
    fam.w = w.scaled(lambda / std::max(1e-12, op_norm_2(w)));
    Matrix u(static_cast<std::size_t>(d), static_cast<std::size_t>(d_q));
    for (auto& x : u.data) x = rng.gauss();
    fam.u = u.scaled(1.0 / std::max(1e-12, op_norm_2(u)));
    fam.answer_lip = 1.0;
    fam.query_map = random_threshold_probe(d, d_q, data_dim, rng);
    AnalystSpec spec;
    spec.family = std::move(fam);
    spec.d = d;
    spec.d_q = d_q;
    spec.norm = NormSpec::l2();
    spec.delta = delta;
    spec.validate();
    return spec;
}

}  // namespace adlab
