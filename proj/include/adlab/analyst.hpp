#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adlab/digits.hpp"
#include "adlab/grid.hpp"
#include "adlab/linalg.hpp"
#include "adlab/loss.hpp"
#include "adlab/mdp.hpp"
#include "adlab/norms.hpp"
#include "adlab/query.hpp"
#include "adlab/schedule.hpp"

namespace adlab {

enum class AnalystClass { Progressive, ConservativeA, ConservativeB, Adversarial };

// ---- query maps f(h) ----

// Thresholds c_j = frac(mult_j * <w, h> + phase_j) probed at data coords.
struct ThresholdProbeMap {
    std::vector<double> weights;  // d
    std::vector<double> mult;     // d_q
    std::vector<double> phase;    // d_q
    std::vector<int> coords;      // d_q data coordinates
};

// Affine probe q(x) = clamp01(base + S h + coupling_j * (x[coords_j] - 1/2));
// constructors keep the image inside [0,1] so empirical answers stay affine
// in h.
struct AffineProbeMap {
    Matrix state_map;              // d_q x d
    std::vector<double> base;      // d_q
    std::vector<double> coupling;  // d_q
    std::vector<int> coords;       // d_q data coordinates
    int data_dim = 0;
};

struct ConstantProbeMap {
    std::vector<double> values;
};

using QueryMap = std::variant<ThresholdProbeMap, AffineProbeMap, ConstantProbeMap>;

// ---- analyst families ----

// h' = A h + B a + offset. Progressive (||A||_op <= lambda < 1) or type B
// conservative (||A||_op <= 1, closed loop with the probe contracting at
// lambda under empirical answers).
struct LinearFamily {
    AnalystClass cls = AnalystClass::Progressive;
    Matrix state_matrix;   // A
    Matrix answer_matrix;  // B
    std::vector<double> offset;
    QueryMap query_map;
    double lambda = 0.5;
    double answer_lip = 1.0;
    double radius = 0.0;  // type B: H is the ball of this radius
};

// h' = tanh(W h + U a); lambda = ||W||_2 with the 1-Lipschitz nonlinearity.
struct RnnFamily {
    Matrix w;
    Matrix u;
    QueryMap query_map;
    double lambda = 0.5;
    double answer_lip = 1.0;
};

// Value iteration over reward estimates decoded from reward-cell answers;
// gamma-progressive in l_inf.
struct BellmanFamily {
    MdpSpec mdp;
};

// Decaying-step gradient descent; declared answer sensitivity is
// eta_t = 2 * grad_bound * step_t.
struct GdaFamily {
    LossSpec loss;
    StepSchedule steps;  // weight-space steps
    double grad_bound = 1.0;
};

// Constant-step gradient descent on a smooth strongly convex loss; type B
// with A = I, B = -2 eta grad_bound I and declared lambda = gd_b_lambda.
struct GdbFamily {
    LossSpec loss;
    double eta = 0.1;
    double grad_bound = 1.0;
    double radius = 10.0;
};

// Writes scale * a_{t-1} into block t-1 of a max_rounds * d_q state; the
// finite stand-in for the fully adaptive stacking construction (lambda = 1).
struct StackingFamily {
    double answer_scale = 1.0;
    std::int64_t max_rounds = 64;
    int d_q = 1;
    int data_dim = 1;
};

// Truncated-view attacker: window 1, full transcript carried in the query
// encoding at a fixed bit budget.
struct BijectionFamily {
    int bits = 16;
    int data_dim = 1;
};

// Digit-interleaving contraction h' = scale * c(a, h) with scale =
// min(lambda, answer_lip) restricted to exact tenths.
struct InterleaveFamily {
    int digits = 6;
    double lambda = 0.9;
    double answer_lip = 1.0;
    int data_dim = 1;
};

using AnalystFamily = std::variant<LinearFamily, RnnFamily, BellmanFamily, GdaFamily, GdbFamily,
                                   StackingFamily, BijectionFamily, InterleaveFamily>;

struct AnalystSpec {
    AnalystFamily family;
    int d = 1;
    int d_q = 1;
    NormSpec norm = NormSpec::l2();
    double delta = 0.0;  // 0 = continuous state space

    void validate() const;
    std::string describe() const;
    AnalystClass analyst_class() const;
    bool grid_mode() const { return delta > 0.0; }
};

struct AnalystState {
    std::int64_t round = 1;  // h is h_round; h_1 = h_0 = 0
    std::vector<double> h;
    std::vector<std::int64_t> coords;  // grid mode only
    // adversarial side state
    PackedWords packed;
    DecimalFraction hd;

    bool grid_equal(const AnalystState& other) const {
        return coords == other.coords && round == other.round;
    }
};

class Analyst {
public:
    explicit Analyst(AnalystSpec spec);

    const AnalystSpec& spec() const { return spec_; }

    AnalystState initial_state() const;

    Query next_query(const AnalystState& s) const;

    // psi applied to plain state vectors (adversaries excluded); t is the
    // round of the consumed answer, so h_{t+1} = psi_t(h_t, a_t).
    std::vector<double> transition(std::span<const double> h, std::int64_t t,
                                   std::span<const double> answer) const;

    // Full step: psi, then grid quantization when delta > 0.
    AnalystState step(const AnalystState& s, std::span<const double> answer) const;

    // Answer that encodes "zero signal" for this family (1/2 for gradient
    // encodings, 0 otherwise); psi(0, neutral) = 0 exactly.
    std::vector<double> neutral_answer() const;

    bool is_linear_in_answer() const;
    Matrix answer_matrix(std::int64_t t) const;

    // Declared parameters for class checks and depth formulas.
    double declared_lambda() const;
    double declared_answer_lip(std::int64_t t) const;
    double radius() const;

    bool is_adversarial() const;
    // Past answers reconstructed from the current state; adversaries only.
    std::vector<std::vector<double>> decode_transcript(const AnalystState& s) const;

private:
    AnalystSpec spec_;
};

// ---- class verification ----

struct ClassReport {
    std::string family;
    bool applicable = true;
    double declared_contraction = 0.0;
    double max_state_ratio = 0.0;      // contraction in h
    double max_answer_ratio = 0.0;     // sensitivity to a, normalized by eta_t / L
    double max_empirical_ratio = 0.0;  // type B closed loop
    double quantization_slack = 0.0;
    int violations = 0;
    std::string note;
};

// Samples random state/answer pairs and checks the defining inequalities of
// the declared class; violations are reported, not thrown. The dataset feeds
// the type B empirical-answer check.
ClassReport verify_class(const Analyst& analyst, int trials, std::uint64_t seed,
                         const std::vector<DataPoint>* data = nullptr);

}  // namespace adlab
