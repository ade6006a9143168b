#include "adlab/json_io.hpp"

#include <stdexcept>

#include "adlab/session.hpp"

namespace adlab {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    return json{{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

Matrix matrix_from_json(const json& j) {
    Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    m.data = j.at("data").get<std::vector<double>>();
    if (m.data.size() != m.rows * m.cols) throw std::invalid_argument("matrix: data size mismatch");
    return m;
}

json query_to_json(const Query& q) {
    json j;
    j["id"] = q.id;
    j["dim"] = q.dim;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, IdentityQuery>) {
                j["kind"] = "identity";
                j["coords"] = p.coords;
            } else if constexpr (std::is_same_v<T, ThresholdQuery>) {
                j["kind"] = "threshold";
                j["coords"] = p.coords;
                j["thresholds"] = p.thresholds;
            } else if constexpr (std::is_same_v<T, AffineQuery>) {
                j["kind"] = "affine";
                j["base"] = p.base;
                j["weights"] = matrix_to_json(p.weights);
            } else if constexpr (std::is_same_v<T, MajoritySignQuery>) {
                j["kind"] = "majority";
                j["coords"] = p.coords;
                std::vector<int> signs(p.signs.begin(), p.signs.end());
                j["signs"] = signs;
            } else if constexpr (std::is_same_v<T, RewardCellQuery>) {
                j["kind"] = "rewardcells";
                j["n_states"] = p.n_states;
                j["n_actions"] = p.n_actions;
            } else if constexpr (std::is_same_v<T, ConstantQuery>) {
                j["kind"] = "constant";
                j["values"] = p.values;
            } else if constexpr (std::is_same_v<T, ReservedEncodingQuery>) {
                j["kind"] = "reserved";
                j["probe_coord"] = p.probe_coord;
                j["encoding_hex"] = p.encoding_hex;
            } else if constexpr (std::is_same_v<T, LogisticGradQuery>) {
                j["kind"] = "logisticgrad";
                j["weights"] = p.weights;
                j["reg"] = p.reg;
                j["grad_bound"] = p.grad_bound;
            }
        },
        q.payload);
    return j;
}

Query query_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    QueryPayload payload;
    if (kind == "identity") {
        payload = IdentityQuery{j.at("coords").get<std::vector<int>>()};
    } else if (kind == "threshold") {
        payload = ThresholdQuery{j.at("coords").get<std::vector<int>>(),
                                 j.at("thresholds").get<std::vector<double>>()};
    } else if (kind == "affine") {
        payload = AffineQuery{j.at("base").get<std::vector<double>>(),
                              matrix_from_json(j.at("weights"))};
    } else if (kind == "majority") {
        auto signs_int = j.at("signs").get<std::vector<int>>();
        std::vector<std::int8_t> signs(signs_int.begin(), signs_int.end());
        payload = MajoritySignQuery{j.at("coords").get<std::vector<int>>(), std::move(signs)};
    } else if (kind == "rewardcells") {
        payload = RewardCellQuery{j.at("n_states").get<int>(), j.at("n_actions").get<int>()};
    } else if (kind == "constant") {
        payload = ConstantQuery{j.at("values").get<std::vector<double>>()};
    } else if (kind == "reserved") {
        payload = ReservedEncodingQuery{j.at("probe_coord").get<int>(),
                                        j.at("encoding_hex").get<std::string>()};
    } else if (kind == "logisticgrad") {
        payload = LogisticGradQuery{j.at("weights").get<std::vector<double>>(),
                                    j.at("reg").get<double>(), j.at("grad_bound").get<double>()};
    } else {
        throw std::invalid_argument("query_from_json: unknown kind " + kind);
    }
    return make_query(std::move(payload));
}

json distribution_to_json(const Distribution& dist) {
    json j;
    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, BernoulliProduct>) {
                j["kind"] = "bernoulli-product";
                j["p"] = d.p;
            } else if constexpr (std::is_same_v<T, UniformBox>) {
                j["kind"] = "uniform-box";
                j["lo"] = d.lo;
                j["hi"] = d.hi;
            } else if constexpr (std::is_same_v<T, ClippedGaussian>) {
                j["kind"] = "clipped-gaussian";
                j["mu"] = d.mu;
                j["sigma"] = d.sigma;
                j["dim"] = d.dim;
            } else {
                j["kind"] = "mdp";
                j["n_states"] = d.mdp.n_states;
                j["n_actions"] = d.mdp.n_actions;
                j["transition"] = d.mdp.transition;
                j["reward"] = d.mdp.reward;
                j["discount"] = d.mdp.discount;
            }
        },
        dist);
    return j;
}

Distribution distribution_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "bernoulli-product") {
        return BernoulliProduct{j.at("p").get<std::vector<double>>()};
    }
    if (kind == "uniform-box") {
        return UniformBox{j.at("lo").get<std::vector<double>>(),
                          j.at("hi").get<std::vector<double>>()};
    }
    if (kind == "clipped-gaussian") {
        return ClippedGaussian{j.at("mu").get<double>(), j.at("sigma").get<double>(),
                               j.at("dim").get<int>()};
    }
    if (kind == "mdp") {
        MdpSpec mdp;
        mdp.n_states = j.at("n_states").get<int>();
        mdp.n_actions = j.at("n_actions").get<int>();
        mdp.transition = j.at("transition").get<std::vector<double>>();
        mdp.reward = j.at("reward").get<std::vector<double>>();
        mdp.discount = j.at("discount").get<double>();
        return MdpDistribution{std::move(mdp)};
    }
    throw std::invalid_argument("distribution_from_json: unknown kind " + kind);
}

json dataset_to_json(const Dataset& ds) {
    json j;
    j["version"] = 1;
    j["seed"] = ds.seed;
    j["n"] = ds.n();
    j["points"] = ds.points;
    return j;
}

Dataset dataset_from_json(const json& j) {
    if (j.value("version", 1) != 1) throw std::invalid_argument("dataset: unsupported version");
    Dataset ds;
    ds.seed = j.value("seed", std::uint64_t{0});
    ds.points = j.at("points").get<std::vector<DataPoint>>();
    if (ds.points.size() != j.at("n").get<std::size_t>()) {
        throw std::invalid_argument("dataset: n does not match the point count");
    }
    return ds;
}


namespace {

using nlohmann::json;

json query_map_to_json(const QueryMap& map) {
    json j;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ThresholdProbeMap>) {
                j["kind"] = "threshold-probe";
                j["weights"] = m.weights;
                j["mult"] = m.mult;
                j["phase"] = m.phase;
                j["coords"] = m.coords;
            } else if constexpr (std::is_same_v<T, AffineProbeMap>) {
                j["kind"] = "affine-probe";
                j["state_map"] = matrix_to_json(m.state_map);
                j["base"] = m.base;
                j["coupling"] = m.coupling;
                j["coords"] = m.coords;
                j["data_dim"] = m.data_dim;
            } else {
                j["kind"] = "constant-probe";
                j["values"] = m.values;
            }
        },
        map);
    return j;
}

QueryMap query_map_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "threshold-probe") {
        return ThresholdProbeMap{j.at("weights").get<std::vector<double>>(),
                                 j.at("mult").get<std::vector<double>>(),
                                 j.at("phase").get<std::vector<double>>(),
                                 j.at("coords").get<std::vector<int>>()};
    }
    if (kind == "affine-probe") {
        return AffineProbeMap{matrix_from_json(j.at("state_map")),
                              j.at("base").get<std::vector<double>>(),
                              j.at("coupling").get<std::vector<double>>(),
                              j.at("coords").get<std::vector<int>>(),
                              j.at("data_dim").get<int>()};
    }
    if (kind == "constant-probe") {
        return ConstantProbeMap{j.at("values").get<std::vector<double>>()};
    }
    throw std::invalid_argument("query_map_from_json: unknown kind " + kind);
}

json loss_to_json(const LossSpec& l) {
    json j;
    j["kind"] = l.kind == LossKind::Quadratic     ? "quadratic"
                : l.kind == LossKind::LogisticL2 ? "logistic-l2"
                                                  : "custom-smooth";
    j["beta"] = l.beta;
    j["mu"] = l.mu;
    j["reg"] = l.reg;
    if (l.hessian.rows != 0) j["hessian"] = matrix_to_json(l.hessian);
    return j;
}

LossSpec loss_from_json(const json& j) {
    LossSpec l;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "quadratic") {
        l.kind = LossKind::Quadratic;
    } else if (kind == "logistic-l2") {
        l.kind = LossKind::LogisticL2;
    } else if (kind == "custom-smooth") {
        l.kind = LossKind::CustomSmooth;
    } else {
        throw std::invalid_argument("loss_from_json: unknown kind " + kind);
    }
    l.beta = j.at("beta").get<double>();
    l.mu = j.at("mu").get<double>();
    l.reg = j.value("reg", 0.0);
    if (j.contains("hessian")) l.hessian = matrix_from_json(j.at("hessian"));
    return l;
}

}  // namespace

json schedule_to_json(const StepSchedule& s) {
    json j;
    switch (s.kind) {
        case StepSchedule::Kind::Zero: j["kind"] = "zero"; break;
        case StepSchedule::Kind::Constant: j["kind"] = "constant"; break;
        case StepSchedule::Kind::Power: j["kind"] = "power"; break;
        case StepSchedule::Kind::Exponential: j["kind"] = "exponential"; break;
    }
    j["scale"] = s.scale;
    j["exponent"] = s.exponent;
    j["ratio"] = s.ratio;
    return j;
}

StepSchedule schedule_from_json(const json& j) {
    StepSchedule s;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") {
        s.kind = StepSchedule::Kind::Zero;
    } else if (kind == "constant") {
        s.kind = StepSchedule::Kind::Constant;
    } else if (kind == "power") {
        s.kind = StepSchedule::Kind::Power;
    } else if (kind == "exponential") {
        s.kind = StepSchedule::Kind::Exponential;
    } else {
        throw std::invalid_argument("schedule_from_json: unknown kind " + kind);
    }
    s.scale = j.value("scale", 1.0);
    s.exponent = j.value("exponent", 1.0);
    s.ratio = j.value("ratio", 0.5);
    s.validate();
    return s;
}

json mechanism_spec_to_json(const MechanismSpec& m) {
    json j;
    switch (m.kind) {
        case MechanismKind::Empirical: j["kind"] = "empirical"; break;
        case MechanismKind::RoundedEmpirical: j["kind"] = "rounded-empirical"; break;
        case MechanismKind::Gaussian: j["kind"] = "gaussian"; break;
        case MechanismKind::ClampedGaussian: j["kind"] = "clamped-gaussian"; break;
    }
    j["round_eps"] = m.round_eps;
    j["sigma"] = m.sigma;
    j["seed"] = m.seed;
    j["d_q"] = m.d_q;
    j["split_noise"] = m.split_noise;
    return j;
}

MechanismSpec mechanism_spec_from_json(const json& j) {
    MechanismSpec m;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "empirical") {
        m.kind = MechanismKind::Empirical;
    } else if (kind == "rounded-empirical") {
        m.kind = MechanismKind::RoundedEmpirical;
    } else if (kind == "gaussian") {
        m.kind = MechanismKind::Gaussian;
    } else if (kind == "clamped-gaussian") {
        m.kind = MechanismKind::ClampedGaussian;
    } else {
        throw std::invalid_argument("mechanism_spec_from_json: unknown kind " + kind);
    }
    m.round_eps = j.value("round_eps", 1.0);
    m.sigma = j.value("sigma", 0.0);
    m.seed = j.value("seed", std::uint64_t{0});
    m.d_q = j.at("d_q").get<int>();
    m.split_noise = j.value("split_noise", false);
    m.validate();
    return m;
}

json analyst_spec_to_json(const AnalystSpec& a) {
    json j;
    j["d"] = a.d;
    j["d_q"] = a.d_q;
    j["norm_p"] = a.norm.p;
    j["delta"] = a.delta;
    json f;
    std::visit(
        [&](const auto& fam) {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, LinearFamily>) {
                f["kind"] = fam.cls == AnalystClass::ConservativeB ? "linear-type-b"
                                                                   : "linear-progressive";
                f["state_matrix"] = matrix_to_json(fam.state_matrix);
                f["answer_matrix"] = matrix_to_json(fam.answer_matrix);
                f["offset"] = fam.offset;
                f["query_map"] = query_map_to_json(fam.query_map);
                f["lambda"] = fam.lambda;
                f["answer_lip"] = fam.answer_lip;
                f["radius"] = fam.radius;
            } else if constexpr (std::is_same_v<T, RnnFamily>) {
                f["kind"] = "stable-rnn";
                f["w"] = matrix_to_json(fam.w);
                f["u"] = matrix_to_json(fam.u);
                f["query_map"] = query_map_to_json(fam.query_map);
                f["lambda"] = fam.lambda;
                f["answer_lip"] = fam.answer_lip;
            } else if constexpr (std::is_same_v<T, BellmanFamily>) {
                f["kind"] = "bellman";
                f["mdp"] = distribution_to_json(Distribution{MdpDistribution{fam.mdp}});
            } else if constexpr (std::is_same_v<T, GdaFamily>) {
                f["kind"] = "gd-decaying";
                f["loss"] = loss_to_json(fam.loss);
                f["steps"] = schedule_to_json(fam.steps);
                f["grad_bound"] = fam.grad_bound;
            } else if constexpr (std::is_same_v<T, GdbFamily>) {
                f["kind"] = "gd-constant";
                f["loss"] = loss_to_json(fam.loss);
                f["eta"] = fam.eta;
                f["grad_bound"] = fam.grad_bound;
                f["radius"] = fam.radius;
            } else if constexpr (std::is_same_v<T, StackingFamily>) {
                f["kind"] = "stacking";
                f["answer_scale"] = fam.answer_scale;
                f["max_rounds"] = fam.max_rounds;
                f["d_q"] = fam.d_q;
                f["data_dim"] = fam.data_dim;
            } else if constexpr (std::is_same_v<T, BijectionFamily>) {
                f["kind"] = "bijection-adversary";
                f["bits"] = fam.bits;
                f["data_dim"] = fam.data_dim;
            } else {
                f["kind"] = "interleave-adversary";
                f["digits"] = fam.digits;
                f["lambda"] = fam.lambda;
                f["answer_lip"] = fam.answer_lip;
                f["data_dim"] = fam.data_dim;
            }
        },
        a.family);
    j["family"] = std::move(f);
    return j;
}

AnalystSpec analyst_spec_from_json(const json& j) {
    AnalystSpec a;
    a.d = j.at("d").get<int>();
    a.d_q = j.at("d_q").get<int>();
    a.norm.p = j.value("norm_p", 2);
    a.delta = j.value("delta", 0.0);
    const json& f = j.at("family");
    const std::string kind = f.at("kind").get<std::string>();
    if (kind == "linear-progressive" || kind == "linear-type-b") {
        LinearFamily fam;
        fam.cls = kind == "linear-type-b" ? AnalystClass::ConservativeB
                                          : AnalystClass::Progressive;
        fam.state_matrix = matrix_from_json(f.at("state_matrix"));
        fam.answer_matrix = matrix_from_json(f.at("answer_matrix"));
        fam.offset = f.value("offset", std::vector<double>{});
        fam.query_map = query_map_from_json(f.at("query_map"));
        fam.lambda = f.at("lambda").get<double>();
        fam.answer_lip = f.at("answer_lip").get<double>();
        fam.radius = f.value("radius", 0.0);
        a.family = std::move(fam);
    } else if (kind == "stable-rnn") {
        RnnFamily fam;
        fam.w = matrix_from_json(f.at("w"));
        fam.u = matrix_from_json(f.at("u"));
        fam.query_map = query_map_from_json(f.at("query_map"));
        fam.lambda = f.at("lambda").get<double>();
        fam.answer_lip = f.at("answer_lip").get<double>();
        a.family = std::move(fam);
    } else if (kind == "bellman") {
        const auto dist = distribution_from_json(f.at("mdp"));
        a.family = BellmanFamily{std::get<MdpDistribution>(dist).mdp};
    } else if (kind == "gd-decaying") {
        GdaFamily fam;
        fam.loss = loss_from_json(f.at("loss"));
        fam.steps = schedule_from_json(f.at("steps"));
        fam.grad_bound = f.at("grad_bound").get<double>();
        a.family = std::move(fam);
    } else if (kind == "gd-constant") {
        GdbFamily fam;
        fam.loss = loss_from_json(f.at("loss"));
        fam.eta = f.at("eta").get<double>();
        fam.grad_bound = f.at("grad_bound").get<double>();
        fam.radius = f.at("radius").get<double>();
        a.family = std::move(fam);
    } else if (kind == "stacking") {
        a.family = StackingFamily{f.at("answer_scale").get<double>(),
                                  f.at("max_rounds").get<std::int64_t>(), f.at("d_q").get<int>(),
                                  f.at("data_dim").get<int>()};
    } else if (kind == "bijection-adversary") {
        a.family = BijectionFamily{f.at("bits").get<int>(), f.at("data_dim").get<int>()};
    } else if (kind == "interleave-adversary") {
        a.family = InterleaveFamily{f.at("digits").get<int>(), f.at("lambda").get<double>(),
                                    f.at("answer_lip").get<double>(), f.at("data_dim").get<int>()};
    } else {
        throw std::invalid_argument("analyst_spec_from_json: unknown kind " + kind);
    }
    a.validate();
    return a;
}

json experiment_config_to_json(const ExperimentConfig& c) {
    json j;
    j["version"] = ExperimentConfig::kVersion;
    j["distribution"] = distribution_to_json(c.distribution);
    j["n"] = c.n;
    j["rounds"] = c.rounds;
    j["analyst"] = analyst_spec_to_json(c.analyst);
    j["mechanism"] = mechanism_spec_to_json(c.mechanism);
    j["seed"] = c.seed;
    j["accuracy_eps"] = c.accuracy_eps;
    j["envelope_multiplier"] = c.envelope_multiplier;
    j["use_mc_means"] = c.use_mc_means;
    j["mc_budget"] = c.mc_budget;
    return j;
}

ExperimentConfig experiment_config_from_json(const json& j) {
    if (j.value("version", 1) != ExperimentConfig::kVersion) {
        throw std::invalid_argument("experiment config: unsupported version");
    }
    ExperimentConfig c;
    c.distribution = distribution_from_json(j.at("distribution"));
    c.n = j.at("n").get<std::size_t>();
    c.rounds = j.at("rounds").get<std::int64_t>();
    c.analyst = analyst_spec_from_json(j.at("analyst"));
    c.mechanism = mechanism_spec_from_json(j.at("mechanism"));
    c.seed = j.value("seed", std::uint64_t{1});
    c.accuracy_eps = j.value("accuracy_eps", 0.1);
    c.envelope_multiplier = j.value("envelope_multiplier", 1.0);
    c.use_mc_means = j.value("use_mc_means", false);
    c.mc_budget = j.value("mc_budget", std::size_t{100000});
    c.validate();
    return c;
}

}  // namespace adlab
