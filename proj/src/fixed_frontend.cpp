#include "speechcmd/fixed_frontend.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "speechcmd/errors.hpp"

namespace speechcmd::fixed {

namespace {

constexpr std::int64_t kLn2Q30 = 744261118;  // round(ln 2 * 2^30)

// Data is rescaled before a stage once any component reaches this bound:
// with |re|,|im| <= 2^29 - 1 a twiddle product plus a butterfly sum stays
// within int32 ((1 + sqrt 2) * 2^29 < 2^31).
constexpr std::int32_t kStageLimit = (1 << 29) - 1;

std::int32_t sat32(std::int64_t v, bool& saturated) {
    if (v > INT32_MAX) {
        saturated = true;
        return INT32_MAX;
    }
    if (v < INT32_MIN) {
        saturated = true;
        return INT32_MIN;
    }
    return static_cast<std::int32_t>(v);
}

__int128 round_shift_wide(__int128 v, int shift) {
    if (shift <= 0) return v << -shift;
    const __int128 floor_shifted = v >> shift;
    const __int128 remainder = v - (floor_shifted << shift);
    const __int128 half = static_cast<__int128>(1) << (shift - 1);
    if (remainder > half) return floor_shifted + 1;
    if (remainder == half && (floor_shifted & 1)) return floor_shifted + 1;
    return floor_shifted;
}

}  // namespace

void FixedPipelineConfig::validate(std::size_t num_mel_filters) const {
    if (log_lut_bits < 4 || log_lut_bits > 20)
        throw ConfigError("fixed pipeline: log_lut_bits must be in [4, 20]");
    const std::size_t s = effective_cos_table_size(num_mel_filters);
    if (s < 8 || s % 4 != 0)
        throw ConfigError("fixed pipeline: cos_table_size must be a multiple of 4, at least 8");
}

std::size_t FixedPipelineConfig::effective_cos_table_size(std::size_t num_mel_filters) const {
    return cos_table_size == 0 ? 4 * num_mel_filters : cos_table_size;
}

Log2Table::Log2Table(int address_bits) : bits_(address_bits) {
    if (bits_ < 4 || bits_ > 20) throw ConfigError("Log2Table: address bits must be in [4, 20]");
    const std::size_t n = std::size_t{1} << bits_;
    entries_.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double m = 1.0 + static_cast<double>(i) / static_cast<double>(n);
        entries_[i] = std::llround(std::log2(m) * 33554432.0);  // Q.25
    }
}

std::int64_t Log2Table::log2_q25(std::uint64_t value) const {
    if (value == 0) throw DataError("Log2Table: log of zero");
    const int p = std::bit_width(value) - 1;  // value in [2^p, 2^(p+1))
    // Mantissa fraction aligned to 61 bits regardless of magnitude.
    const std::uint64_t f61 =
        p <= 61 ? (value - (std::uint64_t{1} << p)) << (61 - p)
                : (value >> (p - 61)) - (std::uint64_t{1} << 61);
    const int low = 61 - bits_;
    const std::uint64_t idx = f61 >> low;
    const std::uint64_t rem = f61 & ((std::uint64_t{1} << low) - 1);
    // Interpolation weight reduced to 20 bits so the product stays narrow.
    const std::int64_t t_q20 = low > 20
        ? round_shift_right_even(static_cast<std::int64_t>(rem), low - 20)
        : static_cast<std::int64_t>(rem) << (20 - low);
    const std::int64_t diff = entries_[idx + 1] - entries_[idx];
    const std::int64_t interp = round_shift_right_even(diff * t_q20, 20);
    return (static_cast<std::int64_t>(p) << 25) + entries_[idx] + interp;
}

std::int64_t ln_from_log2_q25(std::int64_t log2_q25) {
    return static_cast<std::int64_t>(round_shift_wide(static_cast<__int128>(log2_q25) * kLn2Q30, 30));
}

CosTable::CosTable(std::size_t size) {
    if (size < 8 || size % 4 != 0)
        throw ConfigError("CosTable: size must be a multiple of 4, at least 8");
    entries_.resize(size);
    const std::size_t quarter = size / 4;
    // First quadrant computed directly, the rest by exact reflection so the
    // quantized table keeps cos's symmetries bit-for-bit.
    for (std::size_t m = 0; m <= quarter; ++m) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(size);
        entries_[m] = static_cast<std::int32_t>(std::llround(std::cos(angle) * 16384.0));
    }
    for (std::size_t m = quarter + 1; m <= size / 2; ++m) entries_[m] = -entries_[size / 2 - m];
    for (std::size_t m = size / 2 + 1; m < size; ++m) entries_[m] = entries_[size - m];
}

std::int32_t CosTable::at_turns(std::int64_t numerator, std::int64_t denominator) const {
    if (denominator <= 0) throw ConfigError("CosTable: denominator must be positive");
    const std::int64_t s = static_cast<std::int64_t>(entries_.size());
    std::int64_t num = numerator % denominator;
    if (num < 0) num += denominator;
    // Nearest grid entry to size * num / denominator.
    const std::int64_t idx = ((2 * num * s + denominator) / (2 * denominator)) % s;
    return entries_[static_cast<std::size_t>(idx)];
}

std::vector<std::int16_t> quantize_samples(const std::vector<double>& samples) {
    std::vector<std::int16_t> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        out[i] = static_cast<std::int16_t>(quantize(samples[i], kSampleFormat).raw);
    return out;
}

std::vector<std::int32_t> fixed_pre_emphasize(const std::vector<std::int16_t>& x, double alpha) {
    const std::int64_t alpha_q15 = quantize(alpha, kSampleFormat).raw;
    std::vector<std::int32_t> y(x.size());
    if (x.empty()) return y;
    y[0] = static_cast<std::int32_t>(x[0]) << 15;
    for (std::size_t n = 1; n < x.size(); ++n) {
        // Exact in int32: |x << 15| + |alpha_q15 * x| <= 2^30 + 32767 * 2^15 < 2^31.
        const std::int64_t v = (static_cast<std::int64_t>(x[n]) << 15) - alpha_q15 * x[n - 1];
        y[n] = static_cast<std::int32_t>(v);
    }
    return y;
}

std::vector<std::int16_t> quantize_window(const std::vector<double>& window) {
    std::vector<std::int16_t> out(window.size());
    for (std::size_t i = 0; i < window.size(); ++i)
        out[i] = static_cast<std::int16_t>(quantize(window[i], kSampleFormat).raw);
    return out;
}

std::vector<std::int32_t> apply_fixed_window(const std::vector<std::int32_t>& frame_q30,
                                             const std::vector<std::int16_t>& window_q15) {
    if (frame_q30.size() != window_q15.size())
        throw DataError("apply_fixed_window: frame and window lengths differ");
    std::vector<std::int32_t> out(frame_q30.size());
    for (std::size_t i = 0; i < frame_q30.size(); ++i) {
        const std::int64_t p = static_cast<std::int64_t>(frame_q30[i]) * window_q15[i];
        out[i] = static_cast<std::int32_t>(round_shift_right_even(p, 15));
    }
    return out;
}

FixedFftResult fixed_fft(const std::vector<std::int32_t>& frame_q30, std::size_t fft_size) {
    if (fft_size < 2 || (fft_size & (fft_size - 1)) != 0)
        throw ConfigError("fixed_fft: size must be a power of two, at least 2");
    if (frame_q30.size() > fft_size) throw ConfigError("fixed_fft: frame longer than fft size");

    FixedFftResult r;
    r.re.assign(fft_size, 0);
    r.im.assign(fft_size, 0);
    std::copy(frame_q30.begin(), frame_q30.end(), r.re.begin());

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < fft_size; ++i) {
        std::size_t bit = fft_size >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j |= bit;
        if (i < j) {
            std::swap(r.re[i], r.re[j]);
            std::swap(r.im[i], r.im[j]);
        }
    }

    // Q1.30 twiddles for the full half-circle.
    std::vector<std::int32_t> tw_re(fft_size / 2), tw_im(fft_size / 2);
    for (std::size_t j = 0; j < fft_size / 2; ++j) {
        const double a = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(fft_size);
        tw_re[j] = static_cast<std::int32_t>(std::llround(std::cos(a) * 1073741824.0));
        tw_im[j] = static_cast<std::int32_t>(std::llround(std::sin(a) * 1073741824.0));
    }

    for (std::size_t len = 2; len <= fft_size; len <<= 1) {
        // Conditional block scaling: halve everything while a component
        // could push the next butterfly past int32.
        std::int32_t peak = 0;
        for (std::size_t i = 0; i < fft_size; ++i) {
            peak = std::max(peak, std::abs(r.re[i]));
            peak = std::max(peak, std::abs(r.im[i]));
        }
        while (peak > kStageLimit) {
            for (std::size_t i = 0; i < fft_size; ++i) {
                r.re[i] = static_cast<std::int32_t>(round_shift_right_even(r.re[i], 1));
                r.im[i] = static_cast<std::int32_t>(round_shift_right_even(r.im[i], 1));
            }
            ++r.exponent;
            peak = static_cast<std::int32_t>(round_shift_right_even(peak, 1));
        }

        const std::size_t step = fft_size / len;
        for (std::size_t start = 0; start < fft_size; start += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::size_t a = start + j;
                const std::size_t b = a + len / 2;
                const std::int64_t wr = tw_re[j * step];
                const std::int64_t wi = tw_im[j * step];
                const std::int64_t vr = round_shift_right_even(wr * r.re[b] - wi * r.im[b], 30);
                const std::int64_t vi = round_shift_right_even(wr * r.im[b] + wi * r.re[b], 30);
                const std::int64_t ur = r.re[a];
                const std::int64_t ui = r.im[a];
                r.re[a] = sat32(ur + vr, r.saturated);
                r.im[a] = sat32(ui + vi, r.saturated);
                r.re[b] = sat32(ur - vr, r.saturated);
                r.im[b] = sat32(ui - vi, r.saturated);
            }
        }
    }

    // Shift the block back up so the strongest component uses the full
    // word: power readings keep their precision even when scaling overshot.
    std::int32_t peak = 0;
    for (std::size_t i = 0; i < fft_size; ++i) {
        peak = std::max(peak, std::abs(r.re[i]));
        peak = std::max(peak, std::abs(r.im[i]));
    }
    if (peak == 0) {
        r.exponent = 0;
        return r;
    }
    while (peak <= (INT32_MAX >> 1)) {
        for (std::size_t i = 0; i < fft_size; ++i) {
            r.re[i] <<= 1;
            r.im[i] <<= 1;
        }
        --r.exponent;
        peak <<= 1;
    }
    return r;
}

FixedSpectrum fixed_fft_power(const std::vector<std::int16_t>& frame_q15, std::size_t fft_size) {
    std::vector<std::int32_t> frame_q30(frame_q15.size());
    for (std::size_t i = 0; i < frame_q15.size(); ++i)
        frame_q30[i] = static_cast<std::int32_t>(frame_q15[i]) << 15;
    const FixedFftResult f = fixed_fft(frame_q30, fft_size);
    FixedSpectrum s;
    s.exponent = f.exponent;
    s.saturated = f.saturated;
    s.power_raw.resize(fft_size / 2 + 1);
    for (std::size_t b = 0; b <= fft_size / 2; ++b) {
        const std::int64_t p62 = static_cast<std::int64_t>(f.re[b]) * f.re[b] +
                                 static_cast<std::int64_t>(f.im[b]) * f.im[b];
        // |X|^2 = p62 * 2^(2 exponent - 60) = (p62 >> 45) * 2^-15 * 2^(2 exponent)
        s.power_raw[b] = round_shift_right_even(p62, 45);
    }
    return s;
}

dsp::CepstralMatrix fixed_mfcc(const audio::Utterance& u, const dsp::FrontendConfig& cfg,
                               const FixedPipelineConfig& fp) {
    cfg.validate(u.sample_rate_hz);
    fp.validate(cfg.num_mel_filters);
    if (u.samples.empty()) throw DataError("fixed_mfcc: empty utterance");

    const int fs = u.sample_rate_hz;
    const std::size_t frame_len = cfg.frame_length_samples(fs);
    const std::size_t hop = cfg.hop_samples(fs);
    const std::size_t fft_size = cfg.effective_fft_size(fs);
    if (u.samples.size() < frame_len)
        throw DataError("fixed_mfcc: signal shorter than one frame (" +
                        std::to_string(u.samples.size()) + " < " + std::to_string(frame_len) +
                        " samples)");
    const std::size_t num_frames = (u.samples.size() - frame_len) / hop + 1;

    const std::vector<std::int32_t> emphasized =
        fixed_pre_emphasize(quantize_samples(u.samples), cfg.pre_emphasis);
    const std::vector<std::int16_t> window_q15 = quantize_window(dsp::hamming_window(frame_len));

    // Float filterbank weights quantized to Q1.14 once per call.
    const dsp::FilterBank fb = dsp::build_mel_filterbank(cfg, fs);
    std::vector<std::int32_t> weights_q14(fb.weights.size());
    for (std::size_t i = 0; i < fb.weights.size(); ++i)
        weights_q14[i] = static_cast<std::int32_t>(quantize(fb.weights[i], kWeightFormat).raw);

    const Log2Table log_table(fp.log_lut_bits);
    const std::size_t cos_size = fp.effective_cos_table_size(cfg.num_mel_filters);
    const CosTable cos_table(cos_size);
    const std::int64_t ln_floor_q25 = std::llround(std::log(cfg.energy_floor) * 33554432.0);

    const std::size_t m_filters = cfg.num_mel_filters;
    const std::size_t k_cepstra = cfg.num_cepstra;
    const std::int64_t dct_denom = 4 * static_cast<std::int64_t>(m_filters);

    dsp::CepstralMatrix out;
    out.num_cepstra = k_cepstra;
    out.num_frames = num_frames;
    out.values.assign(k_cepstra * num_frames, 0.0);

    std::vector<std::int32_t> frame(frame_len);
    std::vector<std::int64_t> ln_q25(m_filters);
    for (std::size_t j = 0; j < num_frames; ++j) {
        std::copy_n(emphasized.begin() + static_cast<std::ptrdiff_t>(j * hop), frame_len,
                    frame.begin());
        const std::vector<std::int32_t> windowed = apply_fixed_window(frame, window_q15);
        const FixedFftResult spec = fixed_fft(windowed, fft_size);

        std::vector<std::int64_t> p62(fft_size / 2 + 1);
        for (std::size_t b = 0; b <= fft_size / 2; ++b)
            p62[b] = static_cast<std::int64_t>(spec.re[b]) * spec.re[b] +
                     static_cast<std::int64_t>(spec.im[b]) * spec.im[b];

        for (std::size_t m = 0; m < m_filters; ++m) {
            // E = acc * 2^(2 exponent - 74 + extra): Q1.14 weights against the
            // full power word, so weak bands survive the accumulation; the sum
            // is narrowed only at the end, for the log.
            __int128 acc = 0;
            const std::int32_t* wrow = weights_q14.data() + m * fb.num_bins;
            for (std::size_t b = 0; b < fb.num_bins; ++b)
                if (wrow[b] != 0) acc += static_cast<__int128>(wrow[b]) * p62[b];
            int extra = 0;
            while (acc > INT64_MAX) {
                acc >>= 1;
                ++extra;
            }
            const std::int64_t acc64 = static_cast<std::int64_t>(acc);
            const int scale_pow = 2 * spec.exponent - 74 + extra;
            const double threshold = std::ldexp(cfg.energy_floor, -scale_pow);
            if (acc64 <= 0 || static_cast<double>(acc64) < threshold) {
                ln_q25[m] = ln_floor_q25;
            } else {
                const std::int64_t log2e =
                    log_table.log2_q25(static_cast<std::uint64_t>(acc64)) +
                    (static_cast<std::int64_t>(scale_pow) << 25);
                ln_q25[m] = ln_from_log2_q25(log2e);
            }
        }

        for (std::size_t k = 0; k < k_cepstra; ++k) {
            __int128 acc = 0;  // Q.39
            for (std::size_t i = 1; i <= m_filters; ++i) {
                const std::int64_t numer = static_cast<std::int64_t>(k) * (2 * static_cast<std::int64_t>(i) - 1);
                acc += static_cast<__int128>(ln_q25[i - 1]) * cos_table.at_turns(numer, dct_denom);
            }
            out.at(k, j) = std::ldexp(static_cast<double>(acc), -39);
        }
    }
    return out;
}

}  // namespace speechcmd::fixed
