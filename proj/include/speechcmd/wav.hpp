#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace speechcmd::audio {

// One labeled mono recording, the unit of recognition.
struct Utterance {
    std::vector<double> samples;  // amplitudes in [-1, 1)
    int sample_rate_hz = 0;
    std::optional<std::string> label;
    std::string source_id;
};

// Parses a RIFF/WAVE container holding integer PCM, one channel.
// Samples are normalized by 2^(bits-1); 16-bit data round-trips exactly.
// Throws DataError naming the offending chunk on malformed input and an
// unsupported-format DataError on multi-channel or non-PCM files.
Utterance parse_wav(std::span<const std::uint8_t> bytes, const std::string& source_id = "");

Utterance parse_wav_file(const std::string& path);

// Serializes to 16-bit PCM. Values are clamped to [-1, 1) and rounded,
// so 16-bit samples produced by parse_wav come back bit-identical.
std::vector<std::uint8_t> serialize_wav(const Utterance& u);

void write_wav_file(const std::string& path, const Utterance& u);

}  // namespace speechcmd::audio
