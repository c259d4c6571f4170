#pragma once

#include <cstdint>

namespace speechcmd::fixed {

// Signed Q format: integer_bits + fractional_bits value bits plus a sign bit.
// Raw values live in [-2^(i+f), 2^(i+f) - 1].
struct QFormat {
    int integer_bits = 0;
    int fractional_bits = 15;

    int total_bits() const { return integer_bits + fractional_bits; }
    bool operator==(const QFormat&) const = default;
};

struct QValue {
    std::int64_t raw = 0;
    QFormat format;
};

inline constexpr QFormat kSampleFormat{0, 15};    // Q0.15 audio samples
inline constexpr QFormat kSpectrumFormat{16, 15}; // Q16.15 block-scaled power
inline constexpr QFormat kWeightFormat{1, 14};    // Q1.14 filter weights and cosines
inline constexpr QFormat kLogFormat{6, 25};       // Q6.25 logarithms

std::int64_t q_max_raw(QFormat f);
std::int64_t q_min_raw(QFormat f);

// Round-to-nearest-even, saturating at the format bounds. NaN maps to zero.
QValue quantize(double x, QFormat f);
double dequantize(QValue v);

// Saturating same-format arithmetic. Mixed formats are a caller bug.
QValue q_add(QValue a, QValue b);
QValue q_sub(QValue a, QValue b);

// Full-width product rounded back to the operands' format, saturating.
QValue q_mul(QValue a, QValue b);

// Arithmetic right shift with round-half-to-even, shift in [0, 62].
std::int64_t round_shift_right_even(std::int64_t v, int shift);

}  // namespace speechcmd::fixed
