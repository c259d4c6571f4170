#include "speechcmd/anfis_train.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "speechcmd/errors.hpp"

namespace speechcmd::anfis {

void HybridTrainConfig::validate() const {
    if (epochs < 1) throw ConfigError("train_hybrid: epochs must be at least 1");
    if (!(learning_rate > 0.0)) throw ConfigError("train_hybrid: learning rate must be positive");
}

double anfis_loss(const AnfisModel& m, const std::vector<std::vector<double>>& inputs,
                  const std::vector<double>& targets) {
    double loss = 0.0;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const double r = anfis_forward(m, inputs[k]).output - targets[k];
        loss += r * r;
    }
    return loss;
}

void lse_consequents(AnfisModel& m, const std::vector<std::vector<double>>& inputs,
                     const std::vector<double>& targets) {
    if (inputs.empty()) throw DataError("lse_consequents: no samples");
    if (inputs.size() != targets.size())
        throw DataError("lse_consequents: input and target counts differ");
    m.validate();

    const std::size_t num_rules = m.rules.size();
    const std::size_t dim = m.input_dim;
    const std::size_t cols = num_rules * (dim + 1);

    // Regressor row per sample: [wbar_r * x, wbar_r] blocks, one per rule.
    Eigen::MatrixXd a(inputs.size(), cols);
    Eigen::VectorXd y(inputs.size());
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const ForwardResult fwd = anfis_forward(m, inputs[k]);
        for (std::size_t r = 0; r < num_rules; ++r) {
            const double w = fwd.strengths[r];
            for (std::size_t d = 0; d < dim; ++d)
                a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(r * (dim + 1) + d)) =
                    w * inputs[k][d];
            a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(r * (dim + 1) + dim)) = w;
        }
        y(static_cast<Eigen::Index>(k)) = targets[k];
    }

    // Minimum-norm least squares; tolerant of rank deficiency.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    Eigen::VectorXd theta = cod.solve(y);

    for (std::size_t r = 0; r < num_rules; ++r) {
        for (std::size_t d = 0; d < dim; ++d)
            m.rules[r].coeffs[d] = theta(static_cast<Eigen::Index>(r * (dim + 1) + d));
        m.rules[r].bias = theta(static_cast<Eigen::Index>(r * (dim + 1) + dim));
    }
}

PremiseGradient premise_gradient(const AnfisModel& m,
                                 const std::vector<std::vector<double>>& inputs,
                                 const std::vector<double>& targets) {
    const std::size_t num_rules = m.rules.size();
    const std::size_t dim = m.input_dim;
    PremiseGradient g;
    g.d_center.assign(num_rules * dim, 0.0);
    g.d_sigma.assign(num_rules * dim, 0.0);

    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const std::vector<double>& x = inputs[k];
        const ForwardResult fwd = anfis_forward(m, x);
        if (fwd.underflow_fallback) continue;  // uniform strengths carry no premise gradient

        // Total raw strength, recovered from the normalized values.
        double total = 0.0;
        std::vector<double> raw(num_rules);
        std::vector<double> consequent(num_rules);
        for (std::size_t r = 0; r < num_rules; ++r) {
            const Rule& rule = m.rules[r];
            double exponent = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double delta = x[d] - rule.antecedents[d].center;
                const double s = rule.antecedents[d].sigma;
                exponent -= (delta * delta) / (2.0 * s * s);
            }
            raw[r] = std::exp(exponent);
            total += raw[r];
            double f = rule.bias;
            for (std::size_t d = 0; d < dim; ++d) f += rule.coeffs[d] * x[d];
            consequent[r] = f;
        }

        const double residual = fwd.output - targets[k];
        for (std::size_t r = 0; r < num_rules; ++r) {
            // d out / d w_r = (f_r - out) / total
            const double dout_dw = (consequent[r] - fwd.output) / total;
            const double common = 2.0 * residual * dout_dw * raw[r];
            const Rule& rule = m.rules[r];
            for (std::size_t d = 0; d < dim; ++d) {
                const double delta = x[d] - rule.antecedents[d].center;
                const double s = rule.antecedents[d].sigma;
                g.d_center[r * dim + d] += common * delta / (s * s);
                g.d_sigma[r * dim + d] += common * delta * delta / (s * s * s);
            }
        }
    }
    return g;
}

void premise_gradient_step(AnfisModel& m, const std::vector<std::vector<double>>& inputs,
                           const std::vector<double>& targets, double learning_rate) {
    if (!(learning_rate > 0.0)) throw ConfigError("premise_gradient_step: learning rate must be positive");
    const PremiseGradient g = premise_gradient(m, inputs, targets);
    const std::size_t dim = m.input_dim;
    for (std::size_t r = 0; r < m.rules.size(); ++r) {
        for (std::size_t d = 0; d < dim; ++d) {
            GaussianMF& mf = m.rules[r].antecedents[d];
            mf.center -= learning_rate * g.d_center[r * dim + d];
            mf.sigma -= learning_rate * g.d_sigma[r * dim + d];
            if (mf.sigma < 1e-4) mf.sigma = 1e-4;  // keep memberships from collapsing
        }
    }
}

TrainResult train_hybrid(AnfisModel& m, const std::vector<std::vector<double>>& inputs,
                         const std::vector<double>& targets, const HybridTrainConfig& cfg) {
    cfg.validate();
    if (inputs.empty()) throw DataError("train_hybrid: empty training set");
    if (inputs.size() != targets.size())
        throw DataError("train_hybrid: input and target counts differ");

    TrainResult result;
    result.loss_history.reserve(cfg.epochs);
    double lr = cfg.learning_rate;

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        lse_consequents(m, inputs, targets);
        const double loss_lse = anfis_loss(m, inputs, targets);

        const AnfisModel before_step = m;
        premise_gradient_step(m, inputs, targets, lr);
        const double loss_step = anfis_loss(m, inputs, targets);

        if (loss_step <= loss_lse) {
            result.loss_history.push_back(loss_step);
        } else {
            m = before_step;  // roll back the failed premise update
            lr *= 0.5;
            result.loss_history.push_back(loss_lse);
        }
    }
    result.final_learning_rate = lr;
    return result;
}

AnfisEnsemble train_ensemble(const std::vector<std::vector<double>>& inputs,
                             const std::vector<std::size_t>& label_indices,
                             const std::vector<std::string>& vocabulary,
                             const ClusteringConfig& cluster_cfg,
                             const HybridTrainConfig& train_cfg) {
    if (inputs.size() != label_indices.size())
        throw DataError("train_ensemble: input and label counts differ");
    if (vocabulary.empty()) throw DataError("train_ensemble: empty vocabulary");
    for (std::size_t idx : label_indices)
        if (idx >= vocabulary.size()) throw DataError("train_ensemble: label index out of range");

    const auto centers = subtractive_clustering(inputs, cluster_cfg);

    AnfisEnsemble ensemble;
    ensemble.vocabulary = vocabulary;
    ensemble.models.reserve(vocabulary.size());
    for (std::size_t cls = 0; cls < vocabulary.size(); ++cls) {
        std::vector<double> targets(inputs.size());
        for (std::size_t k = 0; k < inputs.size(); ++k)
            targets[k] = label_indices[k] == cls ? 1.0 : 0.0;
        AnfisModel model = init_from_centers(centers, inputs, cluster_cfg.radius);
        train_hybrid(model, inputs, targets, train_cfg);
        ensemble.models.push_back(std::move(model));
    }
    return ensemble;
}

}  // namespace speechcmd::anfis
