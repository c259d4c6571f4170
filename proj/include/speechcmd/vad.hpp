#pragma once

#include <cstddef>
#include <vector>

#include "speechcmd/wav.hpp"

namespace speechcmd::audio {

struct VadConfig {
    double frame_ms = 10.0;
    double energy_threshold_ratio = 0.05;  // fraction of the peak frame energy
    int hangover_frames = 5;
    double min_segment_ms = 100.0;
};

// Half-open sample range [begin, end).
struct Segment {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t length() const { return end - begin; }
};

// Frame-energy voice activity detection with a relative threshold.
// A frame is speech iff its energy reaches energy_threshold_ratio times the
// peak frame energy; speech runs separated by at most hangover_frames merge;
// each run is padded by hangover_frames on both sides (clipped to the signal
// and to its neighbours, padded runs that touch merge); runs shorter than
// min_segment_ms are dropped. All-silence input yields an empty list.
std::vector<Segment> energy_vad(const Utterance& u, const VadConfig& cfg);

// Isolated-command rule: the longest detected segment wins.
// Returns {0, 0} when no segment was found.
Segment longest_segment(const std::vector<Segment>& segments);

// Copies one segment out of an utterance, keeping rate and metadata.
Utterance slice(const Utterance& u, const Segment& seg);

}  // namespace speechcmd::audio
