#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace speechcmd::harness {

struct SynthConfig {
    std::uint64_t seed = 1;
    std::size_t per_class = 24;
    int sample_rate_hz = 16000;
    std::string out_dir = "corpus";
};

struct SynthResult {
    std::string manifest_path;
    std::vector<std::string> wav_paths;
};

// Deterministic pseudo-speech corpus: four formant-like multi-tone templates
// (left, right, up, down), two synthetic speakers, per-utterance jitter on
// pitch, level, and duration, low-level noise, and leading/trailing silence.
// Writes 16-bit mono WAV files under <out_dir>/wav plus a manifest with a
// random half/half train/test split per class and speaker. Every output byte
// is a function of the seed.
SynthResult synth_corpus(const SynthConfig& cfg);

}  // namespace speechcmd::harness
