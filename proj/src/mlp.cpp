#include "speechcmd/mlp.hpp"

#include <algorithm>
#include <cmath>

#include "speechcmd/errors.hpp"
#include "speechcmd/rng.hpp"

namespace speechcmd::mlp {

std::size_t MlpModel::parameter_count() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) n += sizes[l] * sizes[l + 1] + sizes[l + 1];
    return n;
}

void MlpModel::validate() const {
    if (sizes.size() < 2) throw ConfigError("mlp: need at least 2 layers");
    for (std::size_t s : sizes)
        if (s == 0) throw ConfigError("mlp: zero-size layer");
    if (weights.size() != sizes.size() - 1 || biases.size() != sizes.size() - 1)
        throw ConfigError("mlp: layer count mismatch");
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        if (weights[l].size() != sizes[l] * sizes[l + 1])
            throw ConfigError("mlp: weight matrix shape mismatch");
        if (biases[l].size() != sizes[l + 1]) throw ConfigError("mlp: bias vector shape mismatch");
        for (double w : weights[l])
            if (!std::isfinite(w)) throw DataError("mlp: non-finite weight");
        for (double b : biases[l])
            if (!std::isfinite(b)) throw DataError("mlp: non-finite bias");
    }
}

void MlpTrainConfig::validate() const {
    if (epochs < 1) throw ConfigError("mlp_train: epochs must be at least 1");
    if (!(learning_rate > 0.0)) throw ConfigError("mlp_train: learning rate must be positive");
}

MlpModel mlp_init(const std::vector<std::size_t>& sizes, std::uint64_t seed) {
    if (sizes.size() < 2) throw ConfigError("mlp_init: need at least 2 layers");
    for (std::size_t s : sizes)
        if (s == 0) throw ConfigError("mlp_init: zero-size layer");

    MlpModel m;
    m.sizes = sizes;
    Rng rng(seed);
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const std::size_t fan_in = sizes[l];
        const std::size_t fan_out = sizes[l + 1];
        const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
        std::vector<double> w(fan_in * fan_out);
        for (double& v : w) v = rng.uniform(-bound, bound);
        m.weights.push_back(std::move(w));
        m.biases.emplace_back(fan_out, 0.0);
    }
    return m;
}

namespace {

// Activations for every layer, input included. The last layer holds softmax outputs.
std::vector<std::vector<double>> forward_layers(const MlpModel& m, const std::vector<double>& x) {
    std::vector<std::vector<double>> acts;
    acts.reserve(m.sizes.size());
    acts.push_back(x);
    for (std::size_t l = 0; l + 1 < m.sizes.size(); ++l) {
        const std::size_t in = m.sizes[l];
        const std::size_t out = m.sizes[l + 1];
        const std::vector<double>& prev = acts.back();
        std::vector<double> z(out);
        for (std::size_t j = 0; j < out; ++j) {
            double s = m.biases[l][j];
            const double* row = m.weights[l].data() + j * in;
            for (std::size_t i = 0; i < in; ++i) s += row[i] * prev[i];
            z[j] = s;
        }
        const bool last = l + 2 == m.sizes.size();
        if (last) {
            const double zmax = *std::max_element(z.begin(), z.end());
            double total = 0.0;
            for (double& v : z) {
                v = std::exp(v - zmax);
                total += v;
            }
            for (double& v : z) v /= total;
        } else {
            for (double& v : z) v = std::tanh(v);
        }
        acts.push_back(std::move(z));
    }
    return acts;
}

}  // namespace

std::vector<double> mlp_forward(const MlpModel& m, const std::vector<double>& x) {
    m.validate();
    if (x.size() != m.sizes.front())
        throw DataError("mlp_forward: input dimension mismatch: expected " +
                        std::to_string(m.sizes.front()) + ", got " + std::to_string(x.size()));
    return forward_layers(m, x).back();
}

double mlp_loss(const MlpModel& m, const std::vector<std::vector<double>>& inputs,
                const std::vector<std::vector<double>>& targets) {
    if (inputs.empty()) throw DataError("mlp_loss: empty dataset");
    if (inputs.size() != targets.size()) throw DataError("mlp_loss: input and target counts differ");
    double loss = 0.0;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const std::vector<double> p = mlp_forward(m, inputs[k]);
        if (targets[k].size() != p.size()) throw DataError("mlp_loss: target dimension mismatch");
        for (std::size_t j = 0; j < p.size(); ++j)
            if (targets[k][j] != 0.0) loss -= targets[k][j] * std::log(std::max(p[j], 1e-300));
    }
    return loss / static_cast<double>(inputs.size());
}

MlpGradient mlp_gradient(const MlpModel& m, const std::vector<std::vector<double>>& inputs,
                         const std::vector<std::vector<double>>& targets) {
    m.validate();
    if (inputs.empty()) throw DataError("mlp_gradient: empty dataset");
    if (inputs.size() != targets.size())
        throw DataError("mlp_gradient: input and target counts differ");

    MlpGradient g;
    g.d_weights.reserve(m.weights.size());
    g.d_biases.reserve(m.biases.size());
    for (std::size_t l = 0; l + 1 < m.sizes.size(); ++l) {
        g.d_weights.emplace_back(m.weights[l].size(), 0.0);
        g.d_biases.emplace_back(m.biases[l].size(), 0.0);
    }

    const double inv_n = 1.0 / static_cast<double>(inputs.size());
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        if (inputs[k].size() != m.sizes.front())
            throw DataError("mlp_gradient: input dimension mismatch");
        if (targets[k].size() != m.sizes.back())
            throw DataError("mlp_gradient: target dimension mismatch");
        const auto acts = forward_layers(m, inputs[k]);

        // Softmax + cross-entropy: output delta is (p - y).
        std::vector<double> delta(m.sizes.back());
        for (std::size_t j = 0; j < delta.size(); ++j)
            delta[j] = acts.back()[j] - targets[k][j];

        for (std::size_t l = m.sizes.size() - 1; l-- > 0;) {
            const std::size_t in = m.sizes[l];
            const std::size_t out = m.sizes[l + 1];
            const std::vector<double>& prev = acts[l];
            for (std::size_t j = 0; j < out; ++j) {
                const double d = delta[j] * inv_n;
                double* grow = g.d_weights[l].data() + j * in;
                for (std::size_t i = 0; i < in; ++i) grow[i] += d * prev[i];
                g.d_biases[l][j] += d;
            }
            if (l == 0) break;
            std::vector<double> next(in, 0.0);
            for (std::size_t i = 0; i < in; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < out; ++j) s += m.weights[l][j * in + i] * delta[j];
                // tanh'(z) in terms of the activation: 1 - a^2
                next[i] = s * (1.0 - prev[i] * prev[i]);
            }
            delta = std::move(next);
        }
    }
    return g;
}

std::vector<double> mlp_train(MlpModel& m, const std::vector<std::vector<double>>& inputs,
                              const std::vector<std::vector<double>>& targets,
                              const MlpTrainConfig& cfg) {
    cfg.validate();
    if (inputs.empty()) throw DataError("mlp_train: empty dataset");
    if (inputs.size() != targets.size())
        throw DataError("mlp_train: input and target counts differ");
    for (const auto& y : targets) {
        if (y.size() != m.sizes.back()) throw DataError("mlp_train: target dimension mismatch");
        double sum = 0.0;
        for (double v : y) {
            if (v != 0.0 && v != 1.0) throw DataError("mlp_train: targets must be one-hot");
            sum += v;
        }
        if (sum != 1.0) throw DataError("mlp_train: targets must be one-hot");
    }

    std::vector<double> history;
    history.reserve(cfg.epochs);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const MlpGradient g = mlp_gradient(m, inputs, targets);
        for (std::size_t l = 0; l < m.weights.size(); ++l) {
            for (std::size_t i = 0; i < m.weights[l].size(); ++i)
                m.weights[l][i] -= cfg.learning_rate * g.d_weights[l][i];
            for (std::size_t i = 0; i < m.biases[l].size(); ++i)
                m.biases[l][i] -= cfg.learning_rate * g.d_biases[l][i];
        }
        history.push_back(mlp_loss(m, inputs, targets));
    }
    return history;
}

std::vector<double> mlp_scores(const MlpClassifier& c, const feat::FeatureVector& raw_feature) {
    if (c.vocabulary.empty()) throw DataError("mlp_classify: empty vocabulary");
    if (c.norm.mean.empty()) throw DataError("mlp_classify: missing normalizer statistics");
    const std::vector<double> reduced = feat::drop_dc_channel(raw_feature);
    const std::vector<double> normalized = feat::apply_normalizer(c.norm, reduced);
    const std::vector<double> p = mlp_forward(c.model, normalized);
    if (p.size() != c.vocabulary.size())
        throw DataError("mlp_classify: output size does not match vocabulary");
    return p;
}

std::size_t mlp_classify(const MlpClassifier& c, const feat::FeatureVector& raw_feature) {
    const std::vector<double> p = mlp_scores(c, raw_feature);
    std::size_t best = 0;
    for (std::size_t j = 1; j < p.size(); ++j)
        if (p[j] > p[best]) best = j;
    return best;
}

}  // namespace speechcmd::mlp
