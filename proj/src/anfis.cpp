#include "speechcmd/anfis.hpp"

#include <cmath>

#include "speechcmd/errors.hpp"

namespace speechcmd::anfis {

double GaussianMF::membership(double x) const {
    const double d = x - center;
    return std::exp(-(d * d) / (2.0 * sigma * sigma));
}

void AnfisModel::validate() const {
    if (rules.empty()) throw DataError("anfis: model has no rules");
    for (const Rule& r : rules) {
        if (r.antecedents.size() != input_dim || r.coeffs.size() != input_dim)
            throw DataError("anfis: rule dimensions do not match input_dim");
        for (const GaussianMF& mf : r.antecedents)
            if (!(mf.sigma > 0.0)) throw DataError("anfis: sigma must be positive");
    }
}

ForwardResult anfis_forward(const AnfisModel& m, const std::vector<double>& x) {
    if (x.size() != m.input_dim)
        throw DataError("anfis_forward: input dimension " + std::to_string(x.size()) +
                        " does not match model dimension " + std::to_string(m.input_dim));
    if (m.rules.empty()) throw DataError("anfis_forward: model has no rules");

    const std::size_t num_rules = m.rules.size();
    ForwardResult res;
    res.strengths.resize(num_rules);

    // Product of per-dimension memberships, computed as exp of the summed
    // exponents. Underflows to exactly 0 for far-off inputs.
    double total = 0.0;
    for (std::size_t r = 0; r < num_rules; ++r) {
        const Rule& rule = m.rules[r];
        double exponent = 0.0;
        for (std::size_t d = 0; d < m.input_dim; ++d) {
            const double delta = x[d] - rule.antecedents[d].center;
            const double s = rule.antecedents[d].sigma;
            exponent -= (delta * delta) / (2.0 * s * s);
        }
        res.strengths[r] = std::exp(exponent);
        total += res.strengths[r];
    }

    if (total <= 0.0) {
        res.underflow_fallback = true;
        const double uniform = 1.0 / static_cast<double>(num_rules);
        for (double& w : res.strengths) w = uniform;
    } else {
        for (double& w : res.strengths) w /= total;
    }

    double out = 0.0;
    for (std::size_t r = 0; r < num_rules; ++r) {
        const Rule& rule = m.rules[r];
        double f = rule.bias;
        for (std::size_t d = 0; d < m.input_dim; ++d) f += rule.coeffs[d] * x[d];
        out += res.strengths[r] * f;
    }
    res.output = out;
    return res;
}

Classification classify(const AnfisEnsemble& e, const std::vector<double>& features) {
    if (e.models.size() != e.vocabulary.size() || e.models.empty())
        throw DataError("classify: ensemble model count does not match the vocabulary");
    Classification c;
    c.scores.reserve(e.models.size());
    for (const AnfisModel& m : e.models) c.scores.push_back(anfis_forward(m, features).output);
    for (std::size_t i = 1; i < c.scores.size(); ++i)
        if (c.scores[i] > c.scores[c.label_index]) c.label_index = i;
    return c;
}

}  // namespace speechcmd::anfis
