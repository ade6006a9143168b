#include "adlab/digits.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "adlab/grid.hpp"

namespace adlab {

bool DecimalFraction::is_zero() const {
    for (auto d : digits) {
        if (d != 0) return false;
    }
    return true;
}

double DecimalFraction::to_double() const {
    // least significant first to keep the sum well conditioned
    double v = 0.0;
    for (std::size_t i = digits.size(); i-- > 0;) {
        v = (v + static_cast<double>(digits[i])) / 10.0;
    }
    return v;
}

DecimalFraction DecimalFraction::from_double(double x, int n_digits) {
    if (n_digits < 0 || n_digits > 18) {
        throw std::invalid_argument("DecimalFraction: digit budget must lie in [0,18]");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("DecimalFraction: value must lie in [0,1]");
    }
    const double scaled = x * std::pow(10.0, n_digits);
    std::int64_t k = round_half_even(scaled);
    const auto limit = static_cast<std::int64_t>(std::pow(10.0, n_digits));
    if (k > limit) k = limit;
    if (k == limit && n_digits > 0) k = limit - 1;  // 1.0 truncates into [0,1)
    DecimalFraction f;
    f.digits.assign(static_cast<std::size_t>(n_digits), 0);
    for (std::size_t i = f.digits.size(); i-- > 0;) {
        f.digits[i] = static_cast<std::uint8_t>(k % 10);
        k /= 10;
    }
    return f;
}

DecimalFraction interleave_digits(const DecimalFraction& a, const DecimalFraction& h) {
    const std::size_t len = std::max(a.size(), h.size());
    DecimalFraction c;
    c.digits.assign(2 * len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        c.digits[2 * i] = i < a.size() ? a.digits[i] : 0;
        c.digits[2 * i + 1] = i < h.size() ? h.digits[i] : 0;
    }
    return c;
}

std::pair<DecimalFraction, DecimalFraction> de_interleave_digits(const DecimalFraction& c) {
    if (c.size() % 2 != 0) {
        throw std::invalid_argument("de_interleave_digits: odd digit count");
    }
    DecimalFraction a, h;
    a.digits.resize(c.size() / 2);
    h.digits.resize(c.size() / 2);
    for (std::size_t i = 0; i < a.digits.size(); ++i) {
        a.digits[i] = c.digits[2 * i];
        h.digits[i] = c.digits[2 * i + 1];
    }
    return {std::move(a), std::move(h)};
}

DecimalFraction scale_tenths(const DecimalFraction& x, int num) {
    if (num < 1 || num > 10) throw std::invalid_argument("scale_tenths: num must lie in 1..10");
    // value = num * X / 10^(m+1) where x = X / 10^m
    DecimalFraction out;
    out.digits.assign(x.size() + 1, 0);
    int carry = 0;
    for (std::size_t i = x.size(); i-- > 0;) {
        const int v = static_cast<int>(x.digits[i]) * num + carry;
        out.digits[i + 1] = static_cast<std::uint8_t>(v % 10);
        carry = v / 10;
    }
    if (carry > 9) throw std::logic_error("scale_tenths: carry overflow");
    out.digits[0] = static_cast<std::uint8_t>(carry);
    return out;
}

DecimalFraction unscale_tenths(const DecimalFraction& x, int num) {
    if (num < 1 || num > 10) throw std::invalid_argument("unscale_tenths: num must lie in 1..10");
    if (x.size() < 1) throw std::invalid_argument("unscale_tenths: empty fraction");
    // long division of the integer digit string by num; the final remainder
    // must vanish, otherwise precision was destroyed upstream
    DecimalFraction out;
    out.digits.assign(x.size() - 1, 0);
    int rem = static_cast<int>(x.digits[0]);
    for (std::size_t i = 0; i < out.digits.size(); ++i) {
        const int v = rem * 10 + static_cast<int>(x.digits[i + 1]);
        out.digits[i] = static_cast<std::uint8_t>(v / num);
        rem = v % num;
    }
    if (rem != 0) {
        throw std::invalid_argument("unscale_tenths: value not divisible, precision destroyed");
    }
    return out;
}

double interleave(double a, double h, int digits) {
    if (digits < 1 || digits > 9) {
        throw std::invalid_argument("interleave: digit budget must lie in [1,9]");
    }
    const auto fa = DecimalFraction::from_double(a, digits);
    const auto fh = DecimalFraction::from_double(h, digits);
    return interleave_digits(fa, fh).to_double();
}

std::pair<double, double> de_interleave(double c, int digits) {
    if (digits < 1 || digits > 9) {
        throw std::invalid_argument("de_interleave: digit budget must lie in [1,9]");
    }
    const auto fc = DecimalFraction::from_double(c, 2 * digits);
    auto [fa, fh] = de_interleave_digits(fc);
    return {fa.to_double(), fh.to_double()};
}

std::string PackedWords::to_hex() const {
    std::string out;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02x", bits);
    out += buf;
    for (auto w : words) {
        std::snprintf(buf, sizeof(buf), "%08x", w);
        out += buf;
    }
    return out;
}

PackedWords PackedWords::from_hex(const std::string& hex, int bits) {
    if (hex.size() < 2 || (hex.size() - 2) % 8 != 0) {
        throw std::invalid_argument("PackedWords: malformed hex");
    }
    PackedWords p;
    p.bits = static_cast<int>(std::stoul(hex.substr(0, 2), nullptr, 16));
    if (p.bits != bits) throw std::invalid_argument("PackedWords: bit width mismatch");
    for (std::size_t i = 2; i < hex.size(); i += 8) {
        p.words.push_back(static_cast<std::uint32_t>(std::stoul(hex.substr(i, 8), nullptr, 16)));
    }
    return p;
}

std::uint32_t quantize_to_bits(double value01, int bits) {
    if (bits < 1 || bits > 32) throw std::invalid_argument("quantize_to_bits: bits must be 1..32");
    if (!(value01 >= 0.0 && value01 <= 1.0)) {
        throw std::invalid_argument("quantize_to_bits: value outside [0,1]");
    }
    const double levels = std::pow(2.0, bits) - 1.0;
    return static_cast<std::uint32_t>(round_half_even(value01 * levels));
}

double value_from_bits(std::uint32_t word, int bits) {
    const double levels = std::pow(2.0, bits) - 1.0;
    return static_cast<double>(word) / levels;
}

}  // namespace adlab
