#include "speechcmd/vad.hpp"

#include <algorithm>
#include <cmath>

#include "speechcmd/errors.hpp"

namespace speechcmd::audio {

std::vector<Segment> energy_vad(const Utterance& u, const VadConfig& cfg) {
    if (u.samples.empty()) throw DataError("energy_vad: empty utterance");
    if (cfg.frame_ms <= 0 || cfg.min_segment_ms <= 0 || cfg.hangover_frames < 0)
        throw ConfigError("energy_vad: frame_ms and min_segment_ms must be positive");
    if (cfg.energy_threshold_ratio <= 0.0 || cfg.energy_threshold_ratio >= 1.0)
        throw ConfigError("energy_vad: energy_threshold_ratio must lie in (0, 1)");

    const std::size_t frame_len =
        static_cast<std::size_t>(cfg.frame_ms * u.sample_rate_hz / 1000.0);
    if (frame_len < 1) throw ConfigError("energy_vad: frame_ms shorter than one sample");

    const std::size_t num_frames = u.samples.size() / frame_len;  // non-overlapping frames
    if (num_frames == 0) return {};

    std::vector<double> energy(num_frames, 0.0);
    double peak = 0.0;
    for (std::size_t f = 0; f < num_frames; ++f) {
        double e = 0.0;
        for (std::size_t i = f * frame_len; i < (f + 1) * frame_len; ++i)
            e += u.samples[i] * u.samples[i];
        energy[f] = e;
        peak = std::max(peak, e);
    }
    if (peak <= 0.0) return {};  // digital silence

    const double threshold = cfg.energy_threshold_ratio * peak;
    std::vector<bool> speech(num_frames);
    for (std::size_t f = 0; f < num_frames; ++f) speech[f] = energy[f] >= threshold;

    // Collect speech runs as half-open frame ranges.
    struct Run {
        std::size_t begin, end;
    };
    std::vector<Run> runs;
    for (std::size_t f = 0; f < num_frames;) {
        if (!speech[f]) {
            ++f;
            continue;
        }
        std::size_t start = f;
        while (f < num_frames && speech[f]) ++f;
        runs.push_back({start, f});
    }

    // Merge runs whose silence gap is at most hangover_frames.
    const std::size_t hang = static_cast<std::size_t>(cfg.hangover_frames);
    std::vector<Run> merged;
    for (const Run& r : runs) {
        if (!merged.empty() && r.begin - merged.back().end <= hang)
            merged.back().end = r.end;
        else
            merged.push_back(r);
    }

    // Pad by the hangover on both sides; padded runs that touch merge.
    std::vector<Run> padded;
    for (Run r : merged) {
        r.begin = r.begin > hang ? r.begin - hang : 0;
        r.end = std::min(r.end + hang, num_frames);
        if (!padded.empty() && r.begin <= padded.back().end)
            padded.back().end = std::max(padded.back().end, r.end);
        else
            padded.push_back(r);
    }

    const std::size_t min_len =
        static_cast<std::size_t>(cfg.min_segment_ms * u.sample_rate_hz / 1000.0);
    std::vector<Segment> out;
    for (const Run& r : padded) {
        Segment s{r.begin * frame_len, std::min(r.end * frame_len, u.samples.size())};
        if (s.length() >= min_len) out.push_back(s);
    }
    return out;
}

Segment longest_segment(const std::vector<Segment>& segments) {
    Segment best{0, 0};
    for (const Segment& s : segments)
        if (s.length() > best.length()) best = s;
    return best;
}

Utterance slice(const Utterance& u, const Segment& seg) {
    Utterance out;
    out.sample_rate_hz = u.sample_rate_hz;
    out.label = u.label;
    out.source_id = u.source_id;
    out.samples.assign(u.samples.begin() + static_cast<std::ptrdiff_t>(seg.begin),
                       u.samples.begin() + static_cast<std::ptrdiff_t>(seg.end));
    return out;
}

}  // namespace speechcmd::audio
