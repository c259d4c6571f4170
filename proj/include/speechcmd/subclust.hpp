#pragma once

#include <vector>

#include "speechcmd/anfis.hpp"

namespace speechcmd::anfis {

struct ClusteringConfig {
    double radius = 0.2;        // range of influence after min-max scaling
    double squash_factor = 1.25;
    double accept_ratio = 0.5;
    double reject_ratio = 0.15;

    void validate() const;
};

// Density-based center selection over min-max scaled data. Potentials are
// P_i = sum_j exp(-4 |x_i - x_j|^2 / r_a^2); the max-potential point becomes
// a center and its influence is subtracted with radius squash_factor * r_a.
// Candidates between the accept and reject thresholds pass only the
// distance-plus-potential test against existing centers. Centers come back
// in the original coordinates, in selection order.
std::vector<std::vector<double>> subtractive_clustering(
    const std::vector<std::vector<double>>& data, const ClusteringConfig& cfg);

// One rule per center: Gaussian antecedents centered on the cluster with
// sigma = radius * (max_d - min_d) / sqrt(8) per dimension, zero consequents.
AnfisModel init_from_centers(const std::vector<std::vector<double>>& centers,
                             const std::vector<std::vector<double>>& data, double radius);

}  // namespace speechcmd::anfis
