#pragma once

#include <string>
#include <vector>

#include "speechcmd/features.hpp"
#include "speechcmd/fixed_frontend.hpp"
#include "speechcmd/frontend.hpp"
#include "speechcmd/manifest.hpp"
#include "speechcmd/vad.hpp"

namespace speechcmd::harness {

enum class FrontendKind { Float, Fixed };

const char* frontend_name(FrontendKind k);

struct PipelineConfig {
    audio::VadConfig vad;
    dsp::FrontendConfig frontend;
    fixed::FixedPipelineConfig fixed;
    FrontendKind frontend_kind = FrontendKind::Float;
};

// Manifest paths are relative to the directory holding the manifest file.
std::string resolve_path(const std::string& manifest_path, const std::string& entry_path);

// VAD, longest segment, MFCC (float or fixed front-end), per-channel frame
// averaging. A file with no detected speech is a data error.
feat::FeatureVector extract_features(const audio::Utterance& u, const PipelineConfig& cfg);

// The cepstra of the longest voiced segment, for precision comparisons.
dsp::CepstralMatrix extract_cepstra(const audio::Utterance& u, const PipelineConfig& cfg,
                                    FrontendKind kind);

struct FileFailure {
    std::string path;
    std::string message;
};

struct PrepareOutcome {
    std::vector<feat::FeatureRecord> records;  // successes, in manifest order
    std::vector<FileFailure> failures;
};

// Per-file failures are collected, not fatal: the remaining files still
// produce cache lines. Record source ids are the manifest entry paths.
PrepareOutcome prepare_features(const audio::DatasetManifest& manifest,
                                const std::string& manifest_path, const PipelineConfig& cfg);

}  // namespace speechcmd::harness
