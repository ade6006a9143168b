#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <cmath>

namespace adlab {

// Nonincreasing step/sensitivity schedules eta_t, t >= 1.
struct StepSchedule {
    enum class Kind { Zero, Constant, Power, Exponential };

    Kind kind = Kind::Constant;
    double scale = 1.0;     // eta_1 for Power; prefactor otherwise
    double exponent = 1.0;  // Power: scale / t^exponent
    double ratio = 0.5;     // Exponential: scale * ratio^t

    static StepSchedule zero() { return {Kind::Zero, 0.0, 0.0, 0.0}; }
    static StepSchedule constant(double c) { return {Kind::Constant, c, 0.0, 0.0}; }
    static StepSchedule power(double scale, double exponent) {
        return {Kind::Power, scale, exponent, 0.0};
    }
    static StepSchedule exponential(double scale, double ratio) {
        return {Kind::Exponential, scale, 0.0, ratio};
    }

    void validate() const {
        if (kind == Kind::Power && (scale < 0.0 || exponent < 0.0)) {
            throw std::invalid_argument("StepSchedule: increasing power schedule rejected");
        }
        if (kind == Kind::Exponential && (scale < 0.0 || ratio < 0.0 || ratio > 1.0)) {
            throw std::invalid_argument("StepSchedule: increasing exponential schedule rejected");
        }
        if (kind == Kind::Constant && scale < 0.0) {
            throw std::invalid_argument("StepSchedule: negative constant schedule rejected");
        }
    }

    double eval(std::int64_t t) const {
        if (t < 1) throw std::invalid_argument("StepSchedule: t must be >= 1");
        switch (kind) {
            case Kind::Zero: return 0.0;
            case Kind::Constant: return scale;
            case Kind::Power: return scale / std::pow(static_cast<double>(t), exponent);
            case Kind::Exponential: return scale * std::pow(ratio, static_cast<double>(t));
        }
        return 0.0;
    }

    std::string describe() const {
        switch (kind) {
            case Kind::Zero: return "zero";
            case Kind::Constant: return "constant(" + std::to_string(scale) + ")";
            case Kind::Power:
                return std::to_string(scale) + "/t^" + std::to_string(exponent);
            case Kind::Exponential:
                return std::to_string(scale) + "*" + std::to_string(ratio) + "^t";
        }
        return "?";
    }
};

}  // namespace adlab
