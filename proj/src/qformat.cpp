#include "speechcmd/qformat.hpp"

#include <cmath>

#include "speechcmd/errors.hpp"

namespace speechcmd::fixed {

namespace {

void check_format(QFormat f) {
    if (f.integer_bits < 0 || f.fractional_bits < 0 || f.total_bits() < 1 || f.total_bits() > 62)
        throw ConfigError("qformat: total bits must be in [1, 62]");
}

__int128 round_shift_right_even_wide(__int128 v, int shift) {
    if (shift == 0) return v;
    const __int128 floor_shifted = v >> shift;
    const __int128 remainder = v - (floor_shifted << shift);
    const __int128 half = static_cast<__int128>(1) << (shift - 1);
    if (remainder > half) return floor_shifted + 1;
    if (remainder == half && (floor_shifted & 1)) return floor_shifted + 1;
    return floor_shifted;
}

std::int64_t saturate(__int128 v, QFormat f) {
    const __int128 lo = q_min_raw(f);
    const __int128 hi = q_max_raw(f);
    if (v < lo) return static_cast<std::int64_t>(lo);
    if (v > hi) return static_cast<std::int64_t>(hi);
    return static_cast<std::int64_t>(v);
}

}  // namespace

std::int64_t q_max_raw(QFormat f) {
    check_format(f);
    return (static_cast<std::int64_t>(1) << f.total_bits()) - 1;
}

std::int64_t q_min_raw(QFormat f) {
    check_format(f);
    return -(static_cast<std::int64_t>(1) << f.total_bits());
}

QValue quantize(double x, QFormat f) {
    check_format(f);
    if (std::isnan(x)) return {0, f};
    const double scaled = std::nearbyint(std::ldexp(x, f.fractional_bits));
    const std::int64_t lo = q_min_raw(f);
    const std::int64_t hi = q_max_raw(f);
    if (scaled <= static_cast<double>(lo)) return {lo, f};
    if (scaled >= static_cast<double>(hi)) return {hi, f};
    return {static_cast<std::int64_t>(scaled), f};
}

double dequantize(QValue v) {
    check_format(v.format);
    return std::ldexp(static_cast<double>(v.raw), -v.format.fractional_bits);
}

QValue q_add(QValue a, QValue b) {
    if (!(a.format == b.format)) throw ConfigError("q_add: mismatched formats");
    check_format(a.format);
    const __int128 sum = static_cast<__int128>(a.raw) + b.raw;
    return {saturate(sum, a.format), a.format};
}

QValue q_sub(QValue a, QValue b) {
    if (!(a.format == b.format)) throw ConfigError("q_sub: mismatched formats");
    check_format(a.format);
    const __int128 diff = static_cast<__int128>(a.raw) - b.raw;
    return {saturate(diff, a.format), a.format};
}

QValue q_mul(QValue a, QValue b) {
    if (!(a.format == b.format)) throw ConfigError("q_mul: mismatched formats");
    check_format(a.format);
    const __int128 product = static_cast<__int128>(a.raw) * b.raw;
    const __int128 rounded = round_shift_right_even_wide(product, a.format.fractional_bits);
    return {saturate(rounded, a.format), a.format};
}

std::int64_t round_shift_right_even(std::int64_t v, int shift) {
    if (shift < 0 || shift > 62) throw ConfigError("round_shift_right_even: shift out of range");
    return static_cast<std::int64_t>(round_shift_right_even_wide(v, shift));
}

}  // namespace speechcmd::fixed
