#include "adlab/loss.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace adlab {

void LossSpec::validate(std::size_t dim) const {
    if (!(beta >= mu && mu >= 0.0)) {
        throw std::invalid_argument("LossSpec: need beta >= mu >= 0");
    }
    if (kind == LossKind::Quadratic && hessian.rows != 0 &&
        (hessian.rows != dim || hessian.cols != dim)) {
        throw std::invalid_argument("LossSpec: hessian shape mismatch");
    }
    if (reg < 0.0) throw std::invalid_argument("LossSpec: negative regularizer");
}

std::vector<double> loss_gradient(const LossSpec& loss, std::span<const double> h,
                                  const DataPoint& x) {
    switch (loss.kind) {
        case LossKind::Quadratic: {
            if (x.size() != h.size()) throw std::invalid_argument("loss_gradient: dim mismatch");
            std::vector<double> diff(h.size());
            for (std::size_t i = 0; i < h.size(); ++i) diff[i] = h[i] - x[i];
            if (loss.hessian.rows == 0) return diff;
            return matvec(loss.hessian, diff);
        }
        case LossKind::LogisticL2: {
            if (x.size() != h.size() + 1) {
                throw std::invalid_argument("loss_gradient: logistic point must be (features, label)");
            }
            const double y = x.back() >= 0.5 ? 1.0 : -1.0;
            double dot = 0.0;
            for (std::size_t i = 0; i < h.size(); ++i) dot += h[i] * x[i];
            const double s = 1.0 / (1.0 + std::exp(y * dot));
            std::vector<double> g(h.size());
            for (std::size_t i = 0; i < h.size(); ++i) g[i] = -y * s * x[i] + loss.reg * h[i];
            return g;
        }
        case LossKind::CustomSmooth: {
            if (x.size() != h.size()) throw std::invalid_argument("loss_gradient: dim mismatch");
            std::vector<double> g(h.size());
            for (std::size_t i = 0; i < h.size(); ++i) {
                const double u = h[i] - x[i];
                g[i] = loss.mu * u + (loss.beta - loss.mu) * std::tanh(u);
            }
            return g;
        }
    }
    throw std::logic_error("loss_gradient: unreachable");
}

std::vector<double> gd_step_a(std::span<const double> h, std::span<const double> grad,
                              std::int64_t t, const StepSchedule& steps) {
    steps.validate();
    if (h.size() != grad.size()) throw std::invalid_argument("gd_step_a: dim mismatch");
    const double eta = steps.eval(t);
    std::vector<double> out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) out[i] = h[i] - eta * grad[i];
    return out;
}

double gd_b_lambda(double eta, const LossSpec& loss) {
    return 1.0 - eta * loss.beta * loss.mu / (loss.beta + loss.mu);
}

std::vector<double> gd_step_b(std::span<const double> h, std::span<const double> grad, double eta,
                              const LossSpec& loss) {
    if (h.size() != grad.size()) throw std::invalid_argument("gd_step_b: dim mismatch");
    if (loss.mu > 0.0) {
        const double limit = 2.0 / (loss.beta + loss.mu);
        if (eta > limit) {
            std::ostringstream os;
            os << "gd_step_b: eta = " << eta << " violates eta <= 2/(beta+mu) = " << limit;
            throw std::invalid_argument(os.str());
        }
    }
    std::vector<double> out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) out[i] = h[i] - eta * grad[i];
    return out;
}

std::vector<double> encode_gradient(std::span<const double> grad, double grad_bound) {
    if (!(grad_bound > 0.0)) throw std::invalid_argument("encode_gradient: bound must be > 0");
    std::vector<double> out(grad.size());
    for (std::size_t i = 0; i < grad.size(); ++i) {
        out[i] = clamp01(grad[i] / (2.0 * grad_bound) + 0.5);
    }
    return out;
}

std::vector<double> decode_gradient(std::span<const double> answer, double grad_bound) {
    std::vector<double> out(answer.size());
    for (std::size_t i = 0; i < answer.size(); ++i) {
        out[i] = 2.0 * grad_bound * (answer[i] - 0.5);
    }
    return out;
}

}  // namespace adlab
