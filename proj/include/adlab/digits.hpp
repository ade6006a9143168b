#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace adlab {

// Exact base-10 fraction in [0,1): value = sum digits[i] * 10^-(i+1). All
// arithmetic is integer digit arithmetic, so the interleaving constructions
// carry no float error until precision is deliberately destroyed.
struct DecimalFraction {
    std::vector<std::uint8_t> digits;  // most significant first

    std::size_t size() const { return digits.size(); }
    bool is_zero() const;
    double to_double() const;

    // Nearest multiple of 10^-n_digits (ties toward even), represented exactly.
    static DecimalFraction from_double(double x, int n_digits);

    friend bool operator==(const DecimalFraction&, const DecimalFraction&) = default;
};

// c = 0.a1 h1 a2 h2 ...; the shorter stream is zero-padded, output has
// 2*max(|a|,|h|) digits.
DecimalFraction interleave_digits(const DecimalFraction& a, const DecimalFraction& h);

// Inverse of interleave_digits: (a, h) with |a| = |h| = |c|/2.
std::pair<DecimalFraction, DecimalFraction> de_interleave_digits(const DecimalFraction& c);

// x * num/10 for num in 1..10, exact (one extra digit).
DecimalFraction scale_tenths(const DecimalFraction& x, int num);

// Exact inverse of scale_tenths; throws std::invalid_argument when x is not
// divisible (precision was destroyed).
DecimalFraction unscale_tenths(const DecimalFraction& x, int num);

// Convenience wrappers implementing the paper-level operation on reals with a
// declared digit budget.
double interleave(double a, double h, int digits);
std::pair<double, double> de_interleave(double c, int digits);

// Fixed-point words for the truncated-view attacker: values quantized to
// v/(2^bits - 1).
struct PackedWords {
    int bits = 16;
    std::vector<std::uint32_t> words;

    std::string to_hex() const;
    static PackedWords from_hex(const std::string& hex, int bits);
};

std::uint32_t quantize_to_bits(double value01, int bits);
double value_from_bits(std::uint32_t word, int bits);

}  // namespace adlab
