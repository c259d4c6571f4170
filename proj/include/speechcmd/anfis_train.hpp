#pragma once

#include <vector>

#include "speechcmd/anfis.hpp"
#include "speechcmd/subclust.hpp"

namespace speechcmd::anfis {

struct HybridTrainConfig {
    std::size_t epochs = 50;
    double learning_rate = 0.01;  // halved whenever an epoch fails to improve

    void validate() const;
};

// Sum of squared errors over the training set.
double anfis_loss(const AnfisModel& m, const std::vector<std::vector<double>>& inputs,
                  const std::vector<double>& targets);

// Re-solves all consequent coefficients jointly by linear least squares with
// the premises frozen. Rank-deficient systems take the minimum-norm solution,
// so the training loss never increases.
void lse_consequents(AnfisModel& m, const std::vector<std::vector<double>>& inputs,
                     const std::vector<double>& targets);

// Analytic gradient of the sum-of-squares loss with respect to every
// Gaussian center and sigma.
struct PremiseGradient {
    std::vector<double> d_center;  // rules x dims, row-major
    std::vector<double> d_sigma;
};

PremiseGradient premise_gradient(const AnfisModel& m,
                                 const std::vector<std::vector<double>>& inputs,
                                 const std::vector<double>& targets);

// One descent step on the premise parameters; sigma is clamped below at
// 1e-4 afterwards.
void premise_gradient_step(AnfisModel& m, const std::vector<std::vector<double>>& inputs,
                           const std::vector<double>& targets, double learning_rate);

struct TrainResult {
    std::vector<double> loss_history;  // one entry per epoch, non-increasing
    double final_learning_rate = 0.0;
};

// Hybrid learning: per epoch, least-squares consequents then one gradient
// step on the premises. An epoch whose gradient step raises the loss is
// rolled back and the learning rate halves.
TrainResult train_hybrid(AnfisModel& m, const std::vector<std::vector<double>>& inputs,
                         const std::vector<double>& targets, const HybridTrainConfig& cfg);

// One-vs-rest ensemble: clusters the training inputs, then trains one
// single-output model per vocabulary entry with targets 1 (class) / 0 (rest).
AnfisEnsemble train_ensemble(const std::vector<std::vector<double>>& inputs,
                             const std::vector<std::size_t>& label_indices,
                             const std::vector<std::string>& vocabulary,
                             const ClusteringConfig& cluster_cfg, const HybridTrainConfig& train_cfg);

}  // namespace speechcmd::anfis
