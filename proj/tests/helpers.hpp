#pragma once

#include "adlab/analyst.hpp"
#include "adlab/session.hpp"

namespace adlab::testing {

// Scalar linear analyst h' = a_coef * h + b_coef * a with a constant query
// returning `query_value`; paired with any dataset its answers equal
// query_value under the empirical mechanism.
inline AnalystSpec scalar_linear(double a_coef, double b_coef, double delta,
                                 double query_value = 0.5,
                                 AnalystClass cls = AnalystClass::Progressive,
                                 double radius = 0.0) {
    LinearFamily fam;
    fam.cls = cls;
    fam.state_matrix = Matrix(1, 1);
    fam.state_matrix(0, 0) = a_coef;
    fam.answer_matrix = Matrix(1, 1);
    fam.answer_matrix(0, 0) = b_coef;
    fam.lambda = std::abs(a_coef);
    fam.answer_lip = std::abs(b_coef);
    fam.radius = radius;
    fam.query_map = ConstantProbeMap{{query_value}};
    AnalystSpec spec;
    spec.family = std::move(fam);
    spec.d = 1;
    spec.d_q = 1;
    spec.delta = delta;
    return spec;
}

inline ExperimentConfig basic_config(AnalystSpec analyst, MechanismKind kind,
                                     std::size_t n = 50, std::int64_t rounds = 10,
                                     std::uint64_t seed = 1) {
    ExperimentConfig config;
    config.distribution = UniformBox::unit(static_cast<std::size_t>(std::max(1, analyst.d_q)));
    config.n = n;
    config.rounds = rounds;
    config.mechanism.kind = kind;
    config.mechanism.d_q = analyst.d_q;
    config.analyst = std::move(analyst);
    config.seed = seed;
    return config;
}

}  // namespace adlab::testing
