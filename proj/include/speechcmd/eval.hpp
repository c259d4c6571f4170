#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "speechcmd/anfis_train.hpp"
#include "speechcmd/features.hpp"
#include "speechcmd/manifest.hpp"
#include "speechcmd/mlp.hpp"
#include "speechcmd/report.hpp"

namespace speechcmd::harness {

struct EvalSample {
    feat::FeatureVector features;  // raw 13-dim
    std::size_t label_index = 0;
    std::string speaker_id;
    audio::Split split = audio::Split::Train;
    std::string source_id;
};

// Joins cache records with manifest entries by path; every cache line must
// have a manifest entry and agree on the label.
std::vector<EvalSample> join_cache_with_manifest(const std::vector<feat::FeatureRecord>& records,
                                                 const audio::DatasetManifest& manifest);

// A trained step: a label decision function plus the serialized model, so
// tests can assert training artifacts byte-for-byte.
struct TrainedStep {
    std::function<std::size_t(const feat::FeatureVector&)> classify;
    std::string model_text;
};

// Trainers see only the training samples of their step.
using Trainer = std::function<TrainedStep(const std::vector<EvalSample>& train,
                                          const std::vector<std::string>& vocabulary)>;

struct AnfisRunConfig {
    anfis::ClusteringConfig clustering;
    anfis::HybridTrainConfig training;
};

struct MlpRunConfig {
    std::size_t hidden = 16;
    mlp::MlpTrainConfig training;
};

// Production trainers. Both reject a class with no training samples by name;
// the MLP trainer fits its normalizer on the step's training split only.
Trainer make_anfis_trainer(const AnfisRunConfig& cfg);
Trainer make_mlp_trainer(const MlpRunConfig& cfg, std::uint64_t seed);

// Step 1 trains on the train split and tests on the test split; step 2 swaps
// the roles and retrains from scratch.
EvaluationReport evaluate_two_step(const std::vector<EvalSample>& samples,
                                   const std::vector<std::string>& vocabulary,
                                   const Trainer& trainer, const std::string& classifier_name);

}  // namespace speechcmd::harness
