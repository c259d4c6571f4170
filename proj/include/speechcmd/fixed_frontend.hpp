#pragma once

#include <cstdint>
#include <vector>

#include "speechcmd/frontend.hpp"
#include "speechcmd/qformat.hpp"
#include "speechcmd/wav.hpp"

namespace speechcmd::fixed {

struct FixedPipelineConfig {
    int log_lut_bits = 10;         // address width of the log2 table
    std::size_t cos_table_size = 0;  // 0 = 4 * num_mel_filters; must be a multiple of 4

    void validate(std::size_t num_mel_filters) const;
    std::size_t effective_cos_table_size(std::size_t num_mel_filters) const;
};

// log2 over positive integers via table lookup plus linear interpolation on
// the mantissa. One table serves every stage; natural log is a constant
// multiply away.
class Log2Table {
public:
    explicit Log2Table(int address_bits);

    // log2(value) in Q6.25; value must be positive.
    std::int64_t log2_q25(std::uint64_t value) const;
    int address_bits() const { return bits_; }

private:
    int bits_;
    std::vector<std::int64_t> entries_;  // Q.25, 2^bits + 1 entries over [1, 2]
};

// ln(x) in Q6.25 from log2(x) in Q6.25.
std::int64_t ln_from_log2_q25(std::int64_t log2_q25);

// Cosine table over one full period, entries in Q1.14. Size must be a
// multiple of 4 so quadrant reflection keeps the symmetries exact; when the
// requested angle is not on the grid the nearest entry is used.
class CosTable {
public:
    explicit CosTable(std::size_t size);

    // cos(2 pi numerator / denominator) in Q1.14.
    std::int32_t at_turns(std::int64_t numerator, std::int64_t denominator) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<std::int32_t> entries_;
};

// Q0.15 quantization of a real-valued signal, saturating.
std::vector<std::int16_t> quantize_samples(const std::vector<double>& samples);

// y[n] = x[n] - alpha * x[n-1] with Q0.15 operands. The result keeps the
// full product width (Q0.30 in int32, exact), the way a fixed-point MAC
// path would, so no rounding noise enters ahead of the FFT.
std::vector<std::int32_t> fixed_pre_emphasize(const std::vector<std::int16_t>& x, double alpha);

std::vector<std::int16_t> quantize_window(const std::vector<double>& window);

// Q0.30 frame times Q0.15 window coefficients, rounded back to Q0.30.
std::vector<std::int32_t> apply_fixed_window(const std::vector<std::int32_t>& frame_q30,
                                             const std::vector<std::int16_t>& window_q15);

// Complex spectrum of a Q0.30 frame: int32 block-scaled values with a shared
// exponent. True X[k] = (re[k] + i im[k]) * 2^(exponent - 30), in units
// where the input is raw * 2^-30. A stage whose inputs could overflow is
// halved first (exponent++); after the last stage the block is shifted back
// up as far as the word width allows (exponent--), so the exponent may be
// negative. An all-zero frame stays all zero with exponent 0.
struct FixedFftResult {
    std::vector<std::int32_t> re;
    std::vector<std::int32_t> im;
    int exponent = 0;
    bool saturated = false;
};
FixedFftResult fixed_fft(const std::vector<std::int32_t>& frame_q30, std::size_t fft_size);

// Power spectrum bins 0..fft_size/2 in Q16.15 with a block exponent:
// |X[k]|^2 = power_raw[k] * 2^-15 * 2^(2 * exponent).
struct FixedSpectrum {
    std::vector<std::int64_t> power_raw;
    int exponent = 0;
    bool saturated = false;
};
FixedSpectrum fixed_fft_power(const std::vector<std::int16_t>& frame_q15, std::size_t fft_size);

// The MFCC pipeline in fixed point: Q0.15 pre-emphasis and windowing kept
// at product width, the block-scaled FFT above, Q1.14 filterbank
// accumulation on a wide power word, LUT log2 converted to natural log, and
// table-driven DCT cosines. Output is dequantized to real values for
// comparison against the float pipeline.
dsp::CepstralMatrix fixed_mfcc(const audio::Utterance& u, const dsp::FrontendConfig& cfg,
                               const FixedPipelineConfig& fp);

}  // namespace speechcmd::fixed
