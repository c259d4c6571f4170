#pragma once

#include <string>
#include <vector>

#include "speechcmd/config_file.hpp"
#include "speechcmd/manifest.hpp"
#include "speechcmd/pipeline.hpp"

namespace speechcmd::harness {

// Frozen regression bounds for the fixed-point front-end.
inline constexpr double kMaxAbsErrorBound = 0.05;   // C_1..C_12, per frame
inline constexpr double kC0MaxRelBound = 0.01;      // dc channel, per frame
inline constexpr double kAgreementBound = 0.95;     // test-split label agreement

struct ChannelError {
    double max_abs = 0.0;
    double mean_abs = 0.0;
};

struct PrecisionReport {
    FrontendKind candidate = FrontendKind::Fixed;
    std::vector<ChannelError> channels;  // one per cepstral channel
    double c0_max_rel = 0.0;
    std::size_t files_compared = 0;
    std::size_t frames_compared = 0;
    std::size_t agree = 0;        // test-split files whose labels match
    std::size_t agree_total = 0;
    std::vector<FileFailure> failures;
    bool pass = false;
};

// Runs the float front-end as baseline and the candidate front-end beside
// it on every manifest entry, accumulates per-channel errors over frames,
// and measures label agreement on the test split using an ANFIS ensemble
// trained on the baseline's training-split features.
PrecisionReport compare_precision(const audio::DatasetManifest& manifest,
                                  const std::string& manifest_path, const RunConfig& cfg,
                                  FrontendKind candidate);

std::string render_precision_report(const PrecisionReport& report);

}  // namespace speechcmd::harness
