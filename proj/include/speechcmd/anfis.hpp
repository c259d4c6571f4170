#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace speechcmd::anfis {

// Gaussian membership, mu(x) = exp(-(x - c)^2 / (2 sigma^2)).
struct GaussianMF {
    double center = 0.0;
    double sigma = 1.0;

    double membership(double x) const;
};

// First-order Sugeno rule: one Gaussian antecedent per input dimension,
// consequent f(x) = coeffs . x + bias.
struct Rule {
    std::vector<GaussianMF> antecedents;
    std::vector<double> coeffs;
    double bias = 0.0;
};

struct AnfisModel {
    std::vector<Rule> rules;
    std::size_t input_dim = 0;

    void validate() const;
};

struct ForwardResult {
    double output = 0.0;
    std::vector<double> strengths;  // normalized firing strengths, sum to 1
    bool underflow_fallback = false;
};

// Layers: membership, product firing strength, normalization, first-order
// consequents, weighted sum. When every raw strength underflows to zero the
// strengths fall back to uniform 1/R so inference stays total.
ForwardResult anfis_forward(const AnfisModel& m, const std::vector<double>& x);

// One single-output model per command class, argmax decision.
struct AnfisEnsemble {
    std::vector<std::string> vocabulary;
    std::vector<AnfisModel> models;  // one per vocabulary entry, same order
};

struct Classification {
    std::size_t label_index = 0;
    std::vector<double> scores;
};

// Ties resolve to the earliest vocabulary entry.
Classification classify(const AnfisEnsemble& e, const std::vector<double>& features);

}  // namespace speechcmd::anfis
