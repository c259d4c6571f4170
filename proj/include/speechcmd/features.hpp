#pragma once

#include <string>
#include <vector>

#include "speechcmd/frontend.hpp"

namespace speechcmd::feat {

// Per-utterance feature: each cepstral channel averaged over frames.
using FeatureVector = std::vector<double>;

// feature[i] = (1/N) sum_j cepstral(i, j).
FeatureVector compress_features(const dsp::CepstralMatrix& c);

// Removes the dc channel C_0, keeping channels 1..12.
FeatureVector drop_dc_channel(const FeatureVector& f);

struct NormalizationStats {
    std::vector<double> mean;
    std::vector<double> stddev;  // population (n divisor), strictly positive
};

// Per-dimension mean and population standard deviation over the training
// split. A zero-variance dimension is rejected by name.
NormalizationStats fit_normalizer(const std::vector<FeatureVector>& train);

// (f - mean) / std, elementwise.
FeatureVector apply_normalizer(const NormalizationStats& stats, const FeatureVector& f);

// Inverse transform, kept for diagnostics.
FeatureVector denormalize(const NormalizationStats& stats, const FeatureVector& f);

// One cached utterance: `source_id,label,13 comma-separated reals`.
struct FeatureRecord {
    std::string source_id;
    std::string label;
    FeatureVector values;
};

std::string format_feature_cache(const std::vector<FeatureRecord>& records);
std::vector<FeatureRecord> parse_feature_cache(const std::string& text, const std::string& origin);
std::vector<FeatureRecord> read_feature_cache(const std::string& path);

}  // namespace speechcmd::feat
