#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "speechcmd/features.hpp"

namespace speechcmd::mlp {

// Fully connected feed-forward network: tanh hidden layers, softmax output.
// weights[l] is row-major (sizes[l+1] x sizes[l]); biases[l] has sizes[l+1] entries.
struct MlpModel {
    std::vector<std::size_t> sizes;
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;

    std::size_t parameter_count() const;
    void validate() const;
};

struct MlpTrainConfig {
    std::size_t epochs = 500;
    double learning_rate = 0.05;
    std::uint64_t seed = 0;

    void validate() const;
};

// Uniform init in +-sqrt(6 / (fan_in + fan_out)), biases zero. Deterministic per seed.
MlpModel mlp_init(const std::vector<std::size_t>& sizes, std::uint64_t seed);

// Class probabilities (softmax over the last layer).
std::vector<double> mlp_forward(const MlpModel& m, const std::vector<double>& x);

// Full-batch gradient descent on mean cross-entropy. Targets are one-hot rows.
// Returns the loss recorded at the end of each epoch.
std::vector<double> mlp_train(MlpModel& m, const std::vector<std::vector<double>>& inputs,
                              const std::vector<std::vector<double>>& targets,
                              const MlpTrainConfig& cfg);

// Gradients of mean cross-entropy at the current parameters, same layout as the model.
struct MlpGradient {
    std::vector<std::vector<double>> d_weights;
    std::vector<std::vector<double>> d_biases;
};
MlpGradient mlp_gradient(const MlpModel& m, const std::vector<std::vector<double>>& inputs,
                         const std::vector<std::vector<double>>& targets);

double mlp_loss(const MlpModel& m, const std::vector<std::vector<double>>& inputs,
                const std::vector<std::vector<double>>& targets);

// Classifier bundle: the network plus the feature normalizer fitted on training data.
// Raw 13-dim features pass through drop_dc_channel, then the normalizer, then the net.
struct MlpClassifier {
    std::vector<std::string> vocabulary;
    MlpModel model;
    feat::NormalizationStats norm;
};

std::size_t mlp_classify(const MlpClassifier& c, const feat::FeatureVector& raw_feature);
std::vector<double> mlp_scores(const MlpClassifier& c, const feat::FeatureVector& raw_feature);

}  // namespace speechcmd::mlp
