#include "adlab/analyst.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "adlab/rng.hpp"

namespace adlab {
namespace {

double frac(double x) { return x - std::floor(x); }

int scale_num_for(const InterleaveFamily& f) {
    const double scale = std::min(f.lambda, f.answer_lip);
    const double tenths = scale * 10.0;
    const int num = static_cast<int>(std::llround(tenths));
    if (num < 1 || num > 10 || std::abs(tenths - num) > 1e-12) {
        throw std::invalid_argument(
            "InterleaveFamily: min(lambda, L) must be an exact multiple of 0.1");
    }
    return num;
}

Query probe_query(const QueryMap& map, std::span<const double> h) {
    return std::visit(
        [&](const auto& m) -> Query {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ThresholdProbeMap>) {
                double s = 0.0;
                for (std::size_t i = 0; i < m.weights.size(); ++i) s += m.weights[i] * h[i];
                ThresholdQuery q;
                q.coords = m.coords;
                q.thresholds.resize(m.mult.size());
                for (std::size_t j = 0; j < m.mult.size(); ++j) {
                    q.thresholds[j] = frac(m.mult[j] * s + m.phase[j]);
                }
                return make_query(std::move(q));
            } else if constexpr (std::is_same_v<T, AffineProbeMap>) {
                AffineQuery q;
                q.base = m.base;
                const auto sh = matvec(m.state_map, h);
                for (std::size_t j = 0; j < q.base.size(); ++j) {
                    q.base[j] += sh[j] - 0.5 * m.coupling[j];
                }
                q.weights = Matrix(q.base.size(), static_cast<std::size_t>(m.data_dim));
                for (std::size_t j = 0; j < q.base.size(); ++j) {
                    q.weights(j, static_cast<std::size_t>(m.coords[j])) = m.coupling[j];
                }
                return make_query(std::move(q));
            } else {
                return make_query(ConstantQuery{m.values});
            }
        },
        map);
}

std::vector<double> rewards_from_answer(std::span<const double> answer, const MdpSpec& mdp) {
    const int cells = mdp.n_states * mdp.n_actions;
    if (answer.size() != static_cast<std::size_t>(2 * cells)) {
        throw std::invalid_argument("bellman analyst: answer dim != 2*S*A");
    }
    std::vector<double> r(static_cast<std::size_t>(cells));
    for (int c = 0; c < cells; ++c) {
        const double val = answer[static_cast<std::size_t>(c)];
        const double cnt = answer[static_cast<std::size_t>(cells + c)];
        r[static_cast<std::size_t>(c)] = cnt > 1e-12 ? clamp01(val / cnt) : 0.0;
    }
    return r;
}

}  // namespace

void AnalystSpec::validate() const {
    validate_norm(norm);
    if (d < 1 || d_q < 1) throw std::invalid_argument("AnalystSpec: d and d_q must be >= 1");
    if (delta < 0.0) throw std::invalid_argument("AnalystSpec: delta must be >= 0");
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, LinearFamily>) {
                if (f.state_matrix.rows != static_cast<std::size_t>(d) ||
                    f.state_matrix.cols != static_cast<std::size_t>(d) ||
                    f.answer_matrix.rows != static_cast<std::size_t>(d) ||
                    f.answer_matrix.cols != static_cast<std::size_t>(d_q)) {
                    throw std::invalid_argument("LinearFamily: matrix shape mismatch");
                }
                if (!f.offset.empty() && f.offset.size() != static_cast<std::size_t>(d)) {
                    throw std::invalid_argument("LinearFamily: offset size mismatch");
                }
                if (f.cls == AnalystClass::Progressive && !(f.lambda >= 0.0 && f.lambda <= 1.0)) {
                    throw std::invalid_argument("LinearFamily: progressive lambda in [0,1]");
                }
                if (f.cls == AnalystClass::ConservativeB && !(f.radius > 0.0)) {
                    throw std::invalid_argument("LinearFamily: type B needs a radius D > 0");
                }
            } else if constexpr (std::is_same_v<T, RnnFamily>) {
                if (f.w.rows != static_cast<std::size_t>(d) ||
                    f.w.cols != static_cast<std::size_t>(d) ||
                    f.u.rows != static_cast<std::size_t>(d) ||
                    f.u.cols != static_cast<std::size_t>(d_q)) {
                    throw std::invalid_argument("RnnFamily: matrix shape mismatch");
                }
            } else if constexpr (std::is_same_v<T, BellmanFamily>) {
                validate_mdp(f.mdp);
                if (d != f.mdp.n_states || d_q != 2 * f.mdp.n_states * f.mdp.n_actions) {
                    throw std::invalid_argument("BellmanFamily: d must be S, d_q must be 2*S*A");
                }
            } else if constexpr (std::is_same_v<T, GdaFamily>) {
                f.loss.validate(static_cast<std::size_t>(d));
                f.steps.validate();
                if (f.steps.kind == StepSchedule::Kind::Power &&
                    !(f.steps.exponent > 0.5 && f.steps.exponent <= 1.0)) {
                    throw std::invalid_argument("GdaFamily: power decay needs exponent in (0.5, 1]");
                }
                if (!(f.grad_bound > 0.0)) throw std::invalid_argument("GdaFamily: grad bound <= 0");
                if (d_q != d) throw std::invalid_argument("GdaFamily: gradient queries need d_q = d");
            } else if constexpr (std::is_same_v<T, GdbFamily>) {
                f.loss.validate(static_cast<std::size_t>(d));
                if (f.loss.mu > 0.0 && f.eta > 2.0 / (f.loss.beta + f.loss.mu)) {
                    std::ostringstream os;
                    os << "GdbFamily: eta = " << f.eta << " violates eta <= 2/(beta+mu) = "
                       << 2.0 / (f.loss.beta + f.loss.mu);
                    throw std::invalid_argument(os.str());
                }
                if (!(f.grad_bound > 0.0 && f.radius > 0.0)) {
                    throw std::invalid_argument("GdbFamily: grad bound and radius must be > 0");
                }
                if (d_q != d) throw std::invalid_argument("GdbFamily: gradient queries need d_q = d");
            } else if constexpr (std::is_same_v<T, StackingFamily>) {
                if (f.max_rounds < 1 || f.d_q != d_q ||
                    d != static_cast<int>(f.max_rounds) * d_q) {
                    throw std::invalid_argument("StackingFamily: d must be max_rounds * d_q");
                }
            } else if constexpr (std::is_same_v<T, BijectionFamily>) {
                if (f.bits < 1 || f.bits > 32) {
                    throw std::invalid_argument("BijectionFamily: bits must lie in 1..32");
                }
            } else if constexpr (std::is_same_v<T, InterleaveFamily>) {
                if (f.digits < 1 || f.digits > 9) {
                    throw std::invalid_argument("InterleaveFamily: digits must lie in 1..9");
                }
                (void)scale_num_for(f);
                if (d != 1 || d_q != 1) {
                    throw std::invalid_argument("InterleaveFamily: scalar state and answers only");
                }
                if (delta > 0.0) {
                    const double dec = -std::log10(delta);
                    if (std::abs(dec - std::round(dec)) > 1e-9) {
                        throw std::invalid_argument(
                            "InterleaveFamily: grid resolution must be a power of ten");
                    }
                }
            }
        },
        family);
}

AnalystClass AnalystSpec::analyst_class() const {
    return std::visit(
        [](const auto& f) -> AnalystClass {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, LinearFamily>) {
                return f.cls;
            } else if constexpr (std::is_same_v<T, RnnFamily> ||
                                 std::is_same_v<T, BellmanFamily> ||
                                 std::is_same_v<T, StackingFamily>) {
                return AnalystClass::Progressive;
            } else if constexpr (std::is_same_v<T, GdaFamily>) {
                return AnalystClass::ConservativeA;
            } else if constexpr (std::is_same_v<T, GdbFamily>) {
                return AnalystClass::ConservativeB;
            } else {
                return AnalystClass::Adversarial;
            }
        },
        family);
}

std::string AnalystSpec::describe() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, LinearFamily>) {
                os << (f.cls == AnalystClass::ConservativeB ? "linear-type-b" : "linear-progressive")
                   << "(lambda=" << f.lambda << ",L=" << f.answer_lip;
                if (f.radius > 0.0) os << ",D=" << f.radius;
                os << ")";
            } else if constexpr (std::is_same_v<T, RnnFamily>) {
                os << "stable-rnn(lambda=" << f.lambda << ",L=" << f.answer_lip << ")";
            } else if constexpr (std::is_same_v<T, BellmanFamily>) {
                os << "bellman(gamma=" << f.mdp.discount << ",S=" << f.mdp.n_states
                   << ",A=" << f.mdp.n_actions << ")";
            } else if constexpr (std::is_same_v<T, GdaFamily>) {
                os << "gd-decaying(" << f.steps.describe() << ",G=" << f.grad_bound << ")";
            } else if constexpr (std::is_same_v<T, GdbFamily>) {
                os << "gd-constant(eta=" << f.eta << ",lambda=" << gd_b_lambda(f.eta, f.loss)
                   << ",D=" << f.radius << ")";
            } else if constexpr (std::is_same_v<T, StackingFamily>) {
                os << "stacking(L=" << f.answer_scale << ",T=" << f.max_rounds << ")";
            } else if constexpr (std::is_same_v<T, BijectionFamily>) {
                os << "bijection-adversary(bits=" << f.bits << ")";
            } else {
                os << "interleave-adversary(digits=" << f.digits << ",scale="
                   << std::min(f.lambda, f.answer_lip) << ")";
            }
        },
        family);
    os << " d=" << d << " d_q=" << d_q << " delta=" << delta << " p=" << (norm.is_inf() ? 0 : norm.p);
    return os.str();
}

Analyst::Analyst(AnalystSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

AnalystState Analyst::initial_state() const {
    AnalystState s;
    s.round = 1;
    s.h.assign(static_cast<std::size_t>(spec_.d), 0.0);
    if (spec_.grid_mode()) s.coords.assign(static_cast<std::size_t>(spec_.d), 0);
    if (const auto* b = std::get_if<BijectionFamily>(&spec_.family)) s.packed.bits = b->bits;
    return s;
}

Query Analyst::next_query(const AnalystState& s) const {
    return std::visit(
        [&](const auto& f) -> Query {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, LinearFamily>) {
                return probe_query(f.query_map, s.h);
            } else if constexpr (std::is_same_v<T, RnnFamily>) {
                return probe_query(f.query_map, s.h);
            } else if constexpr (std::is_same_v<T, BellmanFamily>) {
                return make_query(RewardCellQuery{f.mdp.n_states, f.mdp.n_actions});
            } else if constexpr (std::is_same_v<T, GdaFamily> || std::is_same_v<T, GdbFamily>) {
                const LossSpec& loss = f.loss;
                const double g2 = 2.0 * f.grad_bound;
                if (loss.kind == LossKind::Quadratic) {
                    const std::size_t d = s.h.size();
                    AffineQuery q;
                    q.base.assign(d, 0.5);
                    Matrix h_mat = loss.hessian.rows == 0 ? Matrix::identity(d) : loss.hessian;
                    const auto hh = matvec(h_mat, s.h);
                    for (std::size_t i = 0; i < d; ++i) {
                        q.base[i] += (hh[i] + loss.reg * s.h[i]) / g2;
                    }
                    q.weights = h_mat.scaled(-1.0 / g2);
                    return make_query(std::move(q));
                }
                if (loss.kind == LossKind::LogisticL2) {
                    return make_query(LogisticGradQuery{s.h, loss.reg, f.grad_bound});
                }
                throw std::invalid_argument(
                    "gd analyst: custom-smooth losses have no session query family");
            } else if constexpr (std::is_same_v<T, StackingFamily>) {
                double sum = 0.0;
                for (double v : s.h) sum += v;
                ThresholdQuery q;
                q.coords.resize(static_cast<std::size_t>(f.d_q));
                q.thresholds.resize(q.coords.size());
                for (std::size_t j = 0; j < q.coords.size(); ++j) {
                    q.coords[j] = static_cast<int>(j) % f.data_dim;
                    q.thresholds[j] = frac(0.6180339887498949 * sum + 0.37 * (double(j) + 1.0));
                }
                return make_query(std::move(q));
            } else if constexpr (std::is_same_v<T, BijectionFamily>) {
                ReservedEncodingQuery q;
                q.probe_coord = static_cast<int>(s.packed.words.size()) % f.data_dim;
                q.encoding_hex = s.packed.to_hex();
                return make_query(std::move(q));
            } else {
                ThresholdQuery q;
                q.coords = {static_cast<int>((s.round - 1) % f.data_dim)};
                q.thresholds = {s.hd.to_double()};
                return make_query(std::move(q));
            }
        },
        spec_.family);
}

std::vector<double> Analyst::transition(std::span<const double> h, std::int64_t t,
                                        std::span<const double> answer) const {
    if (answer.size() != static_cast<std::size_t>(spec_.d_q)) {
        throw std::invalid_argument("Analyst::transition: answer dimension mismatch");
    }
    return std::visit(
        [&](const auto& f) -> std::vector<double> {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, LinearFamily>) {
                auto v = add(matvec(f.state_matrix, h), matvec(f.answer_matrix, answer));
                if (!f.offset.empty()) v = add(v, f.offset);
                return v;
            } else if constexpr (std::is_same_v<T, RnnFamily>) {
                auto v = add(matvec(f.w, h), matvec(f.u, answer));
                for (double& x : v) x = std::tanh(x);
                return v;
            } else if constexpr (std::is_same_v<T, BellmanFamily>) {
                return bellman_step(h, rewards_from_answer(answer, f.mdp), f.mdp);
            } else if constexpr (std::is_same_v<T, GdaFamily>) {
                const auto grad = decode_gradient(answer, f.grad_bound);
                return gd_step_a(h, grad, t, f.steps);
            } else if constexpr (std::is_same_v<T, GdbFamily>) {
                const auto grad = decode_gradient(answer, f.grad_bound);
                return gd_step_b(h, grad, f.eta, f.loss);
            } else if constexpr (std::is_same_v<T, StackingFamily>) {
                if (t > f.max_rounds) {
                    throw std::invalid_argument("stacking analyst: state capacity exhausted");
                }
                std::vector<double> v(h.begin(), h.end());
                const std::size_t off = static_cast<std::size_t>(t - 1) * f.d_q;
                for (std::size_t j = 0; j < answer.size(); ++j) {
                    v[off + j] = f.answer_scale * answer[j];
                }
                return v;
            } else {
                throw std::invalid_argument("Analyst::transition: adversary needs step()");
            }
        },
        spec_.family);
}

AnalystState Analyst::step(const AnalystState& s, std::span<const double> answer) const {
    AnalystState next;
    next.round = s.round + 1;
    if (const auto* b = std::get_if<BijectionFamily>(&spec_.family)) {
        next.h = s.h;
        next.coords = s.coords;
        next.packed = s.packed;
        if (next.packed.words.size() > (1u << 16)) {
            throw std::invalid_argument("bijection adversary: encoding budget exhausted");
        }
        for (double a : answer) next.packed.words.push_back(quantize_to_bits(a, b->bits));
        return next;
    }
    if (const auto* il = std::get_if<InterleaveFamily>(&spec_.family)) {
        const int num = scale_num_for(*il);
        const auto fa = DecimalFraction::from_double(clamp01(answer[0]), il->digits);
        if (s.hd.size() > (1u << 20)) {
            throw std::invalid_argument("interleave adversary: digit budget exhausted");
        }
        DecimalFraction hd = scale_tenths(interleave_digits(fa, s.hd), num);
        if (spec_.grid_mode()) {
            // quantization to the grid destroys the deep digits by design
            const GridState g = quantize(std::vector<double>{hd.to_double()}, spec_.delta);
            next.coords = g.coords;
            next.h = g.values();
            const int grid_decimals = static_cast<int>(std::llround(-std::log10(spec_.delta)));
            next.hd = DecimalFraction::from_double(clamp01(next.h[0]), grid_decimals);
        } else {
            next.hd = std::move(hd);
            next.h = {next.hd.to_double()};
        }
        return next;
    }
    const auto v = transition(s.h, s.round, answer);
    if (spec_.grid_mode()) {
        const GridState g = quantize(v, spec_.delta);
        next.coords = g.coords;
        next.h = g.values();
    } else {
        next.h = v;
    }
    return next;
}

std::vector<double> Analyst::neutral_answer() const {
    const bool gd = std::holds_alternative<GdaFamily>(spec_.family) ||
                    std::holds_alternative<GdbFamily>(spec_.family);
    return std::vector<double>(static_cast<std::size_t>(spec_.d_q), gd ? 0.5 : 0.0);
}

bool Analyst::is_linear_in_answer() const {
    return std::holds_alternative<LinearFamily>(spec_.family) ||
           std::holds_alternative<GdaFamily>(spec_.family) ||
           std::holds_alternative<GdbFamily>(spec_.family);
}

Matrix Analyst::answer_matrix(std::int64_t t) const {
    if (const auto* lin = std::get_if<LinearFamily>(&spec_.family)) return lin->answer_matrix;
    if (const auto* ga = std::get_if<GdaFamily>(&spec_.family)) {
        return Matrix::identity(static_cast<std::size_t>(spec_.d))
            .scaled(-2.0 * ga->grad_bound * ga->steps.eval(t));
    }
    if (const auto* gb = std::get_if<GdbFamily>(&spec_.family)) {
        return Matrix::identity(static_cast<std::size_t>(spec_.d))
            .scaled(-2.0 * gb->grad_bound * gb->eta);
    }
    throw std::invalid_argument("answer_matrix: family is not linear in the answer");
}

double Analyst::declared_lambda() const {
    return std::visit(
        [](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, LinearFamily>) {
                return f.lambda;
            } else if constexpr (std::is_same_v<T, RnnFamily>) {
                return f.lambda;
            } else if constexpr (std::is_same_v<T, BellmanFamily>) {
                return f.mdp.discount;
            } else if constexpr (std::is_same_v<T, GdaFamily>) {
                return 1.0;  // type A declares answer sensitivity, not contraction
            } else if constexpr (std::is_same_v<T, GdbFamily>) {
                return gd_b_lambda(f.eta, f.loss);
            } else if constexpr (std::is_same_v<T, StackingFamily>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, InterleaveFamily>) {
                return f.lambda;
            } else {
                return 1.0;
            }
        },
        spec_.family);
}

double Analyst::declared_answer_lip(std::int64_t t) const {
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, LinearFamily>) {
                return f.answer_lip;
            } else if constexpr (std::is_same_v<T, RnnFamily>) {
                return f.answer_lip;
            } else if constexpr (std::is_same_v<T, GdaFamily>) {
                return 2.0 * f.grad_bound * f.steps.eval(t);
            } else if constexpr (std::is_same_v<T, GdbFamily>) {
                return 2.0 * f.grad_bound * f.eta;
            } else if constexpr (std::is_same_v<T, StackingFamily>) {
                return f.answer_scale;
            } else {
                return std::numeric_limits<double>::infinity();
            }
        },
        spec_.family);
}

double Analyst::radius() const {
    if (const auto* lin = std::get_if<LinearFamily>(&spec_.family)) return lin->radius;
    if (const auto* gb = std::get_if<GdbFamily>(&spec_.family)) return gb->radius;
    return 0.0;
}

bool Analyst::is_adversarial() const {
    return spec_.analyst_class() == AnalystClass::Adversarial ||
           std::holds_alternative<StackingFamily>(spec_.family);
}

std::vector<std::vector<double>> Analyst::decode_transcript(const AnalystState& s) const {
    if (const auto* st = std::get_if<StackingFamily>(&spec_.family)) {
        std::vector<std::vector<double>> out;
        const auto rounds = static_cast<std::size_t>(s.round - 1);
        for (std::size_t r = 0; r < rounds; ++r) {
            std::vector<double> a(static_cast<std::size_t>(st->d_q));
            for (std::size_t j = 0; j < a.size(); ++j) {
                a[j] = s.h[r * a.size() + j] / st->answer_scale;
            }
            out.push_back(std::move(a));
        }
        return out;
    }
    if (const auto* b = std::get_if<BijectionFamily>(&spec_.family)) {
        std::vector<std::vector<double>> out;
        const auto dq = static_cast<std::size_t>(spec_.d_q);
        for (std::size_t i = 0; i + dq <= s.packed.words.size(); i += dq) {
            std::vector<double> a(static_cast<std::size_t>(spec_.d_q));
            for (std::size_t j = 0; j < a.size(); ++j) {
                a[j] = value_from_bits(s.packed.words[i + j], b->bits);
            }
            out.push_back(std::move(a));
        }
        return out;
    }
    if (const auto* il = std::get_if<InterleaveFamily>(&spec_.family)) {
        const int num = scale_num_for(*il);
        std::vector<std::vector<double>> rev;
        DecimalFraction hd = s.hd;
        for (std::int64_t r = s.round - 1; r >= 1; --r) {
            const DecimalFraction c = unscale_tenths(hd, num);
            auto [fa, fh] = de_interleave_digits(c);
            rev.push_back({fa.to_double()});
            hd = std::move(fh);
        }
        return {rev.rbegin(), rev.rend()};
    }
    throw std::invalid_argument("decode_transcript: not an encoding analyst");
}

// ---- verify_class ----

namespace {

// Largest ||h||_inf for which per-sample gradients on [0,1]-supported data
// stay within the declared bound, so the encoding never clips.
double clip_free_radius(const LossSpec& loss, double grad_bound) {
    switch (loss.kind) {
        case LossKind::Quadratic: {
            const double hnorm =
                (loss.hessian.rows == 0 ? 1.0 : op_norm_inf(loss.hessian)) + loss.reg;
            return std::max(0.05, grad_bound / hnorm - 1.0);
        }
        case LossKind::LogisticL2:
            if (loss.reg <= 0.0) return grad_bound >= 1.0 ? 4.0 : 0.05;
            return std::max(0.05, (grad_bound - 1.0) / loss.reg);
        case LossKind::CustomSmooth:
            return std::max(0.05, (grad_bound - (loss.beta - loss.mu)) / std::max(1e-9, loss.mu) - 1.0);
    }
    return 1.0;
}

std::vector<double> empirical_over(const Query& q, const std::vector<DataPoint>& pts) {
    std::vector<double> sum(static_cast<std::size_t>(q.dim), 0.0);
    for (const auto& x : pts) {
        const auto v = eval_query(q, x);
        for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += v[j];
    }
    for (double& s : sum) s /= static_cast<double>(pts.size());
    return sum;
}

}  // namespace

ClassReport verify_class(const Analyst& analyst, int trials, std::uint64_t seed,
                         const std::vector<DataPoint>* data) {
    const AnalystSpec& spec = analyst.spec();
    ClassReport rep;
    rep.family = spec.describe();
    if (analyst.is_adversarial() &&
        !std::holds_alternative<StackingFamily>(spec.family)) {
        rep.applicable = false;
        rep.note =
            "adversarial constructions sit outside the declared classes: the bijection "
            "attacker is not a vector dynamical system and the interleaving map is not "
            "Lipschitz at digit rollovers";
        return rep;
    }
    if (trials < 1) throw std::invalid_argument("verify_class: trials must be >= 1");

    const auto cls = spec.analyst_class();
    rep.declared_contraction = analyst.declared_lambda();
    const int d = spec.d;
    const int d_q = spec.d_q;
    const double dpow = spec.norm.p == 1   ? static_cast<double>(d)
                        : spec.norm.p == 2 ? std::sqrt(static_cast<double>(d))
                                           : 1.0;
    rep.quantization_slack = spec.grid_mode() ? spec.delta * dpow : 0.0;

    // Sampling stays inside the family's homogeneous region: for gradient
    // analysts that is where the [0,1] encoding never clips (outside it the
    // effective update is gradient clipping and the declared constants do not
    // apply).
    double range = 1.0;
    if (const auto* bl = std::get_if<BellmanFamily>(&spec.family)) {
        range = 1.0 / (1.0 - bl->mdp.discount);
    } else if (const auto* ga = std::get_if<GdaFamily>(&spec.family)) {
        range = clip_free_radius(ga->loss, ga->grad_bound);
    } else if (const auto* gb = std::get_if<GdbFamily>(&spec.family)) {
        range = std::min(gb->radius, clip_free_radius(gb->loss, gb->grad_bound));
    } else if (analyst.radius() > 0.0) {
        range = analyst.radius();
    } else if (cls == AnalystClass::Progressive) {
        range = std::min(100.0, analyst.declared_answer_lip(1) *
                                     ones_norm(static_cast<std::size_t>(d_q), spec.norm) /
                                     std::max(1e-6, 1.0 - rep.declared_contraction + 1e-6));
    }

    Rng rng(seed);
    auto sample_state = [&]() {
        AnalystState s;
        s.round = 1;
        s.h.resize(static_cast<std::size_t>(d));
        for (double& x : s.h) x = (2.0 * rng.uniform01() - 1.0) * range;
        if (spec.grid_mode()) {
            const GridState g = quantize(s.h, spec.delta);
            s.coords = g.coords;
            s.h = g.values();
        }
        return s;
    };
    auto sample_answer = [&]() {
        std::vector<double> a(static_cast<std::size_t>(d_q));
        for (double& x : a) x = rng.uniform01();
        return a;
    };

    const double tol = 1e-12;
    std::int64_t t_cap = 64;
    if (const auto* st = std::get_if<StackingFamily>(&spec.family)) t_cap = st->max_rounds;
    for (int i = 0; i < trials; ++i) {
        const std::int64_t t = rng.uniform_int(1, t_cap);
        AnalystState s1 = sample_state();
        AnalystState s2 = sample_state();
        s1.round = s2.round = t;
        const auto a = sample_answer();
        const auto a2 = sample_answer();

        const auto n1 = analyst.step(s1, a);
        const auto n2 = analyst.step(s2, a);
        const double dh = lp_distance(std::span<const double>(s1.h), s2.h, spec.norm);
        if (dh > 1e-9) {
            const double dout = lp_distance(std::span<const double>(n1.h), n2.h, spec.norm);
            const double ratio = (dout - rep.quantization_slack) / dh;
            rep.max_state_ratio = std::max(rep.max_state_ratio, ratio);
            // progressive: lambda bounds the fixed-answer contraction; type B:
            // Def. 3 only requires ||A_t||_op <= 1, lambda governs the
            // empirical closed loop; type A declares nothing here
            double state_bound = rep.declared_contraction;
            if (cls == AnalystClass::ConservativeB) state_bound = 1.0;
            if (cls != AnalystClass::ConservativeA && ratio > state_bound + tol) {
                ++rep.violations;
            }
        }

        const auto m2 = analyst.step(s1, a2);
        const double da = lp_distance(std::span<const double>(a), a2, spec.norm);
        const double lip = analyst.declared_answer_lip(t);
        if (da > 1e-9 && std::isfinite(lip)) {
            const double dout = lp_distance(std::span<const double>(n1.h), m2.h, spec.norm);
            const double ratio = (dout - rep.quantization_slack) / (lip * da);
            rep.max_answer_ratio = std::max(rep.max_answer_ratio, ratio);
            if (ratio > 1.0 + tol) ++rep.violations;
        }

        if (cls == AnalystClass::ConservativeB && data != nullptr && !data->empty()) {
            const auto q1 = analyst.next_query(s1);
            const auto q2 = analyst.next_query(s2);
            const auto e1 = empirical_over(q1, *data);
            const auto e2 = empirical_over(q2, *data);
            const auto c1 = analyst.step(s1, e1);
            const auto c2 = analyst.step(s2, e2);
            if (dh > 1e-9) {
                const double dout = lp_distance(std::span<const double>(c1.h), c2.h, spec.norm);
                const double ratio = (dout - rep.quantization_slack) / dh;
                rep.max_empirical_ratio = std::max(rep.max_empirical_ratio, ratio);
                if (ratio > rep.declared_contraction + tol) ++rep.violations;
            }
        }
    }
    return rep;
}

}  // namespace adlab
