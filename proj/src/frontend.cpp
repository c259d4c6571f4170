#include "speechcmd/frontend.hpp"

#include <algorithm>
#include <cmath>

#include "speechcmd/errors.hpp"
#include "speechcmd/fft.hpp"
#include "speechcmd/textio.hpp"

namespace speechcmd::dsp {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}
}  // namespace

std::size_t FrontendConfig::frame_length_samples(int fs) const {
    return static_cast<std::size_t>(frame_length_ms * fs / 1000.0);
}

std::size_t FrontendConfig::hop_samples(int fs) const {
    return static_cast<std::size_t>(hop_ms * fs / 1000.0);
}

std::size_t FrontendConfig::effective_fft_size(int fs) const {
    return fft_size != 0 ? fft_size : next_power_of_two(frame_length_samples(fs));
}

double FrontendConfig::effective_high_freq(int fs) const {
    return high_freq_hz != 0.0 ? high_freq_hz : fs / 2.0;
}

void FrontendConfig::validate(int fs) const {
    if (fs <= 0) throw ConfigError("frontend: sample rate must be positive");
    if (hop_ms <= 0 || frame_length_ms < hop_ms)
        throw ConfigError("frontend: need frame_length_ms >= hop_ms > 0");
    if (frame_length_samples(fs) < 2) throw ConfigError("frontend: frame shorter than 2 samples");
    if (hop_samples(fs) < 1) throw ConfigError("frontend: hop shorter than 1 sample");
    if (num_cepstra == 0 || num_cepstra > num_mel_filters)
        throw ConfigError("frontend: need 1 <= num_cepstra <= num_mel_filters");
    if (!is_power_of_two(effective_fft_size(fs)))
        throw ConfigError("frontend: fft_size must be a power of two");
    if (effective_fft_size(fs) < frame_length_samples(fs))
        throw ConfigError("frontend: fft_size smaller than the frame length");
    if (low_freq_hz < 0 || low_freq_hz >= effective_high_freq(fs) ||
        effective_high_freq(fs) > fs / 2.0)
        throw ConfigError("frontend: need 0 <= low_freq_hz < high_freq_hz <= Fs/2");
    if (pre_emphasis < 0.0 || pre_emphasis >= 1.0)
        throw ConfigError("frontend: pre_emphasis must lie in [0, 1)");
    if (energy_floor < 0.0) throw ConfigError("frontend: energy_floor must be >= 0");
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

std::vector<double> pre_emphasize(const std::vector<double>& x, double alpha) {
    std::vector<double> y(x.size());
    if (x.empty()) return y;
    y[0] = x[0];
    for (std::size_t n = 1; n < x.size(); ++n) y[n] = x[n] - alpha * x[n - 1];
    return y;
}

FrameMatrix frame_signal(const std::vector<double>& samples, const FrontendConfig& cfg, int fs) {
    cfg.validate(fs);
    const std::size_t frame_len = cfg.frame_length_samples(fs);
    const std::size_t hop = cfg.hop_samples(fs);
    if (samples.size() < frame_len)
        throw DataError("frame_signal: signal shorter than one frame (" +
                        std::to_string(samples.size()) + " < " + std::to_string(frame_len) + ")");

    FrameMatrix fm;
    fm.frame_length = frame_len;
    fm.num_frames = (samples.size() - frame_len) / hop + 1;
    fm.data.resize(fm.num_frames * frame_len);
    for (std::size_t j = 0; j < fm.num_frames; ++j)
        std::copy_n(samples.begin() + static_cast<std::ptrdiff_t>(j * hop), frame_len,
                    fm.data.begin() + static_cast<std::ptrdiff_t>(j * frame_len));
    return fm;
}

std::vector<double> hamming_window(std::size_t length) {
    if (length < 2) throw ConfigError("hamming_window: length must be at least 2");
    std::vector<double> w(length);
    for (std::size_t n = 0; n < length; ++n)
        w[n] = 0.54 - 0.46 * std::cos(2.0 * kPi * static_cast<double>(n) /
                                      static_cast<double>(length - 1));
    return w;
}

std::vector<double> apply_window(const std::vector<double>& frame) {
    const std::vector<double> w = hamming_window(frame.size());
    std::vector<double> out(frame.size());
    for (std::size_t n = 0; n < frame.size(); ++n) out[n] = frame[n] * w[n];
    return out;
}

std::vector<double> fft_power_spectrum(const std::vector<double>& frame, std::size_t fft_size) {
    auto spectrum = fft_real(frame, fft_size);
    std::vector<double> power(fft_size / 2 + 1);
    for (std::size_t b = 0; b < power.size(); ++b) power[b] = std::norm(spectrum[b]);
    return power;
}

FilterBank build_mel_filterbank(const FrontendConfig& cfg, int fs) {
    cfg.validate(fs);
    const std::size_t fft_size = cfg.effective_fft_size(fs);
    const std::size_t num_bins = fft_size / 2 + 1;
    const std::size_t m = cfg.num_mel_filters;

    // M + 2 vertices equally spaced in mel between the band edges.
    const double mel_lo = hz_to_mel(cfg.low_freq_hz);
    const double mel_hi = hz_to_mel(cfg.effective_high_freq(fs));
    std::vector<double> vertex_hz(m + 2);
    for (std::size_t i = 0; i < m + 2; ++i)
        vertex_hz[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                              static_cast<double>(m + 1));

    // Vertices must stay distinct at this FFT resolution or filters collapse.
    const double bin_hz = static_cast<double>(fs) / static_cast<double>(fft_size);
    for (std::size_t i = 0; i + 1 < m + 2; ++i) {
        if (static_cast<long>(vertex_hz[i] / bin_hz + 0.5) ==
            static_cast<long>(vertex_hz[i + 1] / bin_hz + 0.5))
            throw ConfigError("mel filterbank: adjacent vertices fall on the same FFT bin; "
                              "reduce num_mel_filters or raise fft_size");
    }

    FilterBank fb;
    fb.num_filters = m;
    fb.num_bins = num_bins;
    fb.weights.assign(m * num_bins, 0.0);
    fb.center_bins.resize(m);
    for (std::size_t f = 0; f < m; ++f) {
        const double left = vertex_hz[f], center = vertex_hz[f + 1], right = vertex_hz[f + 2];
        double best_w = -1.0;
        std::size_t best_b = 0;
        for (std::size_t b = 0; b < num_bins; ++b) {
            const double hz = static_cast<double>(b) * bin_hz;
            double w = 0.0;
            if (hz > left && hz < right)
                w = hz <= center ? (hz - left) / (center - left) : (right - hz) / (right - center);
            fb.weights[f * num_bins + b] = w;
            if (w > best_w) {
                best_w = w;
                best_b = b;
            }
        }
        fb.center_bins[f] = best_b;
    }
    return fb;
}

std::vector<double> filterbank_energies(const std::vector<double>& power, const FilterBank& fb,
                                        double floor) {
    if (power.size() != fb.num_bins)
        throw DataError("filterbank_energies: spectrum length does not match the filterbank");
    std::vector<double> energies(fb.num_filters);
    for (std::size_t m = 0; m < fb.num_filters; ++m) {
        const double* w = fb.row(m);
        double e = 0.0;
        for (std::size_t b = 0; b < fb.num_bins; ++b) e += w[b] * power[b];
        energies[m] = std::max(e, floor);
    }
    return energies;
}

std::vector<double> dct_cepstrum(const std::vector<double>& energies, std::size_t num_cepstra) {
    const std::size_t n = energies.size();
    if (num_cepstra > n) throw ConfigError("dct_cepstrum: more cepstra requested than energies");
    std::vector<double> log_e(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(energies[i] > 0.0))
            throw DataError("dct_cepstrum: energies must be positive (apply the floor first)");
        log_e[i] = std::log(energies[i]);
    }
    std::vector<double> c(num_cepstra, 0.0);
    for (std::size_t k = 0; k < num_cepstra; ++k) {
        double acc = 0.0;
        for (std::size_t i = 1; i <= n; ++i)
            acc += log_e[i - 1] * std::cos(kPi * static_cast<double>(k) / static_cast<double>(n) *
                                           (static_cast<double>(i) - 0.5));
        c[k] = acc;
    }
    return c;
}

CepstralMatrix mfcc(const audio::Utterance& u, const FrontendConfig& cfg) {
    cfg.validate(u.sample_rate_hz);
    const std::vector<double>& raw = u.samples;
    const std::vector<double> emphasized =
        cfg.pre_emphasis > 0.0 ? pre_emphasize(raw, cfg.pre_emphasis) : raw;

    const FrameMatrix frames = frame_signal(emphasized, cfg, u.sample_rate_hz);
    const std::size_t fft_size = cfg.effective_fft_size(u.sample_rate_hz);
    const FilterBank fb = build_mel_filterbank(cfg, u.sample_rate_hz);
    const std::vector<double> window = hamming_window(frames.frame_length);

    CepstralMatrix out;
    out.num_cepstra = cfg.num_cepstra;
    out.num_frames = frames.num_frames;
    out.values.resize(out.num_cepstra * out.num_frames);

    std::vector<double> frame(frames.frame_length);
    for (std::size_t j = 0; j < frames.num_frames; ++j) {
        const double* src = frames.frame(j);
        for (std::size_t n = 0; n < frame.size(); ++n) frame[n] = src[n] * window[n];
        const auto power = fft_power_spectrum(frame, fft_size);
        const auto energies = filterbank_energies(power, fb, cfg.energy_floor);
        const auto cep = dct_cepstrum(energies, cfg.num_cepstra);
        for (std::size_t k = 0; k < cfg.num_cepstra; ++k) out.at(k, j) = cep[k];
    }
    return out;
}

std::string format_cepstra(const CepstralMatrix& c) {
    std::string out;
    for (std::size_t j = 0; j < c.num_frames; ++j) {
        for (std::size_t k = 0; k < c.num_cepstra; ++k) {
            if (k) out += ' ';
            out += fmt_double(c.at(k, j));
        }
        out += '\n';
    }
    return out;
}

}  // namespace speechcmd::dsp
