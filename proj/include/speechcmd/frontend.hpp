#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "speechcmd/wav.hpp"

namespace speechcmd::dsp {

struct FrontendConfig {
    double frame_length_ms = 25.0;
    double hop_ms = 10.0;
    std::size_t fft_size = 0;  // 0 = next power of two >= frame length
    std::size_t num_mel_filters = 26;
    std::size_t num_cepstra = 13;
    double low_freq_hz = 0.0;
    double high_freq_hz = 0.0;  // 0 = Fs/2
    double pre_emphasis = 0.97;  // 0 disables
    double energy_floor = 1e-10;

    std::size_t frame_length_samples(int fs) const;
    std::size_t hop_samples(int fs) const;
    std::size_t effective_fft_size(int fs) const;
    double effective_high_freq(int fs) const;
    void validate(int fs) const;
};

// N frames by L samples, row-major.
struct FrameMatrix {
    std::vector<double> data;
    std::size_t num_frames = 0;
    std::size_t frame_length = 0;

    const double* frame(std::size_t j) const { return data.data() + j * frame_length; }
};

struct FilterBank {
    std::vector<double> weights;  // M rows by (fft_size/2 + 1) columns
    std::vector<std::size_t> center_bins;
    std::size_t num_filters = 0;
    std::size_t num_bins = 0;

    const double* row(std::size_t m) const { return weights.data() + m * num_bins; }
};

// K cepstral channels by N frames, row-major: row k is channel C_k over time.
struct CepstralMatrix {
    std::vector<double> values;
    std::size_t num_cepstra = 0;
    std::size_t num_frames = 0;

    double at(std::size_t k, std::size_t j) const { return values[k * num_frames + j]; }
    double& at(std::size_t k, std::size_t j) { return values[k * num_frames + j]; }
};

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// y[n] = x[n] - alpha * x[n-1], with y[0] = x[0].
std::vector<double> pre_emphasize(const std::vector<double>& x, double alpha);

// Frame j covers samples [j*hop, j*hop + L); the trailing partial frame is
// dropped. A signal shorter than one frame is an error.
FrameMatrix frame_signal(const std::vector<double>& samples, const FrontendConfig& cfg, int fs);

// Hamming window, w[n] = 0.54 - 0.46 cos(2 pi n / (L-1)).
std::vector<double> hamming_window(std::size_t length);
std::vector<double> apply_window(const std::vector<double>& frame);

// |X[b]|^2 for bins 0..fft_size/2 of the zero-padded frame.
std::vector<double> fft_power_spectrum(const std::vector<double>& frame, std::size_t fft_size);

// M triangular filters with vertices equally spaced on the mel scale,
// evaluated at FFT bin center frequencies.
FilterBank build_mel_filterbank(const FrontendConfig& cfg, int fs);

// E_m = sum_b weights[m][b] * power[b], clamped below at the energy floor.
std::vector<double> filterbank_energies(const std::vector<double>& power, const FilterBank& fb,
                                        double floor);

// C_k = sum_{i=1..N} log(E_i) cos(pi k (i - 1/2) / N) for k = 0..K-1.
// No orthonormal scaling. C_0 is the dc channel (sum of log energies).
std::vector<double> dct_cepstrum(const std::vector<double>& energies, std::size_t num_cepstra);

// The full pipeline: optional pre-emphasis, framing, Hamming window, power
// spectrum, mel energies, log-DCT. One output column per frame.
CepstralMatrix mfcc(const audio::Utterance& u, const FrontendConfig& cfg);

// Text dump, one frame per line, for cross-implementation diffing.
std::string format_cepstra(const CepstralMatrix& c);

}  // namespace speechcmd::dsp
