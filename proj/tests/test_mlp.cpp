#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "speechcmd/errors.hpp"
#include "speechcmd/features.hpp"
#include "speechcmd/mlp.hpp"
#include "speechcmd/model_io.hpp"

using namespace speechcmd;

namespace {

mlp::MlpClassifier make_classifier(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    mlp::MlpClassifier c;
    c.vocabulary = {"up", "down", "left", "right"};
    c.model = mlp::mlp_init({12, 16, 4}, seed);
    std::vector<feat::FeatureVector> rows;
    for (int k = 0; k < 6; ++k) rows.push_back(oracle::random_vector(rng, 12, -4.0, 4.0));
    c.norm = feat::fit_normalizer(rows);
    return c;
}

bool same_doubles(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("mlp_init is deterministic per seed with zero biases") {
    const auto a = mlp::mlp_init({12, 16, 4}, 9);
    const auto b = mlp::mlp_init({12, 16, 4}, 9);
    const auto c = mlp::mlp_init({12, 16, 4}, 10);

    REQUIRE(a.weights.size() == 2);
    CHECK(same_doubles(a.weights[0], b.weights[0]));
    CHECK(same_doubles(a.weights[1], b.weights[1]));
    CHECK_FALSE(same_doubles(a.weights[0], c.weights[0]));

    for (const auto& layer : a.biases)
        for (double v : layer) CHECK(v == 0.0);

    const double bound0 = std::sqrt(6.0 / (12.0 + 16.0));
    const double bound1 = std::sqrt(6.0 / (16.0 + 4.0));
    for (double w : a.weights[0]) CHECK(std::abs(w) <= bound0);
    for (double w : a.weights[1]) CHECK(std::abs(w) <= bound1);

    CHECK(a.parameter_count() == 12 * 16 + 16 + 16 * 4 + 4);
    CHECK(a.parameter_count() == 276);

    CHECK_THROWS_AS(mlp::mlp_init({5}, 0), ConfigError);
    CHECK_THROWS_AS(mlp::mlp_init({4, 0, 2}, 0), ConfigError);
}

TEST_CASE("mlp_forward returns a probability vector") {
    std::mt19937_64 rng(1);
    const auto m = mlp::mlp_init({6, 8, 3}, 2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = mlp::mlp_forward(m, oracle::random_vector(rng, 6, -2.0, 2.0));
        REQUIRE(p.size() == 3);
        double sum = 0.0;
        for (double v : p) {
            CHECK(v > 0.0);
            sum += v;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
}

TEST_CASE("mlp_forward with zero parameters is uniform") {
    mlp::MlpModel m;
    m.sizes = {3, 4};
    m.weights = {std::vector<double>(12, 0.0)};
    m.biases = {std::vector<double>(4, 0.0)};
    const auto p = mlp::mlp_forward(m, {1.0, -2.0, 0.5});
    for (double v : p) CHECK(v == 0.25);
}

TEST_CASE("mlp_forward matches the plain-softmax oracle") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const auto m = mlp::mlp_init({5, 7, 4}, rng());
        const auto x = oracle::random_vector(rng, 5, -2.0, 2.0);
        const auto got = mlp::mlp_forward(m, x);
        const auto want = oracle::mlp_forward(m, x);
        REQUIRE(got.size() == want.size());
        for (std::size_t j = 0; j < got.size(); ++j) CHECK(oracle::rel_err(got[j], want[j]) <= 1e-12);
    }

    const auto m = mlp::mlp_init({5, 4}, 0);
    CHECK_THROWS_WITH_AS(mlp::mlp_forward(m, {1.0, 2.0}), doctest::Contains("dimension"), DataError);
}

TEST_CASE("mlp_forward is invariant to a common shift of the output biases") {
    auto m = mlp::mlp_init({4, 6, 3}, 5);
    const std::vector<double> x = {0.3, -0.7, 1.1, 0.0};
    const auto base = mlp::mlp_forward(m, x);
    for (double& b : m.biases.back()) b += 37.5;
    const auto shifted = mlp::mlp_forward(m, x);
    for (std::size_t j = 0; j < base.size(); ++j)
        CHECK(shifted[j] == doctest::Approx(base[j]).epsilon(1e-12));
}

TEST_CASE("mlp_gradient matches central finite differences") {
    const double h = 1e-6;
    for (unsigned seed : {11u, 22u}) {
        std::mt19937_64 rng(seed);
        auto m = mlp::mlp_init({3, 5, 2}, seed);
        std::vector<std::vector<double>> inputs;
        std::vector<std::vector<double>> targets;
        for (int k = 0; k < 10; ++k) {
            inputs.push_back(oracle::random_vector(rng, 3, -1.5, 1.5));
            std::vector<double> y(2, 0.0);
            y[rng() % 2] = 1.0;
            targets.push_back(std::move(y));
        }

        const auto g = mlp::mlp_gradient(m, inputs, targets);
        for (std::size_t l = 0; l < m.weights.size(); ++l) {
            for (std::size_t i = 0; i < m.weights[l].size(); ++i) {
                auto plus = m;
                auto minus = m;
                plus.weights[l][i] += h;
                minus.weights[l][i] -= h;
                const double fd = (mlp::mlp_loss(plus, inputs, targets) -
                                   mlp::mlp_loss(minus, inputs, targets)) /
                                  (2.0 * h);
                const double a = g.d_weights[l][i];
                CHECK(std::abs(a - fd) / std::max({std::abs(a), std::abs(fd), 1e-6}) <= 1e-4);
            }
            for (std::size_t i = 0; i < m.biases[l].size(); ++i) {
                auto plus = m;
                auto minus = m;
                plus.biases[l][i] += h;
                minus.biases[l][i] -= h;
                const double fd = (mlp::mlp_loss(plus, inputs, targets) -
                                   mlp::mlp_loss(minus, inputs, targets)) /
                                  (2.0 * h);
                const double a = g.d_biases[l][i];
                CHECK(std::abs(a - fd) / std::max({std::abs(a), std::abs(fd), 1e-6}) <= 1e-4);
            }
        }
    }
}

TEST_CASE("mlp_train is deterministic and learns a separable problem") {
    std::mt19937_64 rng(77);
    std::vector<std::vector<double>> inputs;
    std::vector<std::vector<double>> targets;
    for (int k = 0; k < 20; ++k) {
        const bool cls = k % 2 == 0;
        auto x = oracle::random_vector(rng, 2, -0.4, 0.4);
        x[0] += cls ? 1.5 : -1.5;
        inputs.push_back(x);
        targets.push_back(cls ? std::vector<double>{1.0, 0.0} : std::vector<double>{0.0, 1.0});
    }

    mlp::MlpTrainConfig cfg;
    cfg.epochs = 200;
    cfg.learning_rate = 0.5;

    auto a = mlp::mlp_init({2, 6, 2}, 4);
    auto b = mlp::mlp_init({2, 6, 2}, 4);
    const auto hist_a = mlp::mlp_train(a, inputs, targets, cfg);
    const auto hist_b = mlp::mlp_train(b, inputs, targets, cfg);

    REQUIRE(hist_a.size() == 200);
    CHECK(same_doubles(hist_a, hist_b));
    for (std::size_t l = 0; l < a.weights.size(); ++l) {
        CHECK(same_doubles(a.weights[l], b.weights[l]));
        CHECK(same_doubles(a.biases[l], b.biases[l]));
    }
    CHECK(hist_a.back() < hist_a.front());

    std::size_t correct = 0;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const auto p = mlp::mlp_forward(a, inputs[k]);
        const std::size_t got = p[0] > p[1] ? 0 : 1;
        const std::size_t want = targets[k][0] == 1.0 ? 0 : 1;
        if (got == want) ++correct;
    }
    CHECK(correct == inputs.size());
}

TEST_CASE("mlp_train validates configuration and targets") {
    auto m = mlp::mlp_init({2, 2}, 0);
    const std::vector<std::vector<double>> inputs = {{0.0, 1.0}};
    const std::vector<std::vector<double>> one_hot = {{1.0, 0.0}};

    mlp::MlpTrainConfig cfg;
    cfg.epochs = 0;
    CHECK_THROWS_AS(mlp::mlp_train(m, inputs, one_hot, cfg), ConfigError);
    cfg = {};
    cfg.learning_rate = 0.0;
    CHECK_THROWS_AS(mlp::mlp_train(m, inputs, one_hot, cfg), ConfigError);

    cfg = {};
    CHECK_THROWS_AS(mlp::mlp_train(m, {}, {}, cfg), DataError);
    CHECK_THROWS_AS(mlp::mlp_train(m, inputs, {}, cfg), DataError);
    CHECK_THROWS_AS(mlp::mlp_train(m, inputs, {{0.5, 0.5}}, cfg), DataError);
    CHECK_THROWS_AS(mlp::mlp_train(m, inputs, {{1.0, 1.0}}, cfg), DataError);
    CHECK_THROWS_AS(mlp::mlp_train(m, inputs, {{1.0}}, cfg), DataError);
}

TEST_CASE("mlp_classify normalizes, drops the DC channel, and takes the argmax") {
    mlp::MlpClassifier c;
    c.vocabulary = {"up", "down", "left", "right"};
    c.model.sizes = {12, 4};
    c.model.weights = {std::vector<double>(48, 0.0)};
    c.model.biases = {std::vector<double>(4, 0.0)};
    c.norm.mean.assign(12, 0.0);
    c.norm.stddev.assign(12, 1.0);

    const feat::FeatureVector raw(13, 0.7);
    const auto uniform = mlp::mlp_scores(c, raw);
    for (double v : uniform) CHECK(v == 0.25);
    CHECK(mlp::mlp_classify(c, raw) == 0);  // tie resolves to the first class

    c.model.biases[0][2] = 3.0;
    CHECK(mlp::mlp_classify(c, raw) == 2);

    // The DC channel must not reach the network: a 13-dim raw vector feeds a
    // 12-input model, and changing only the DC entry leaves the scores alone.
    feat::FeatureVector raw2 = raw;
    raw2[0] = -100.0;
    CHECK(same_doubles(mlp::mlp_scores(c, raw), mlp::mlp_scores(c, raw2)));

    auto no_vocab = c;
    no_vocab.vocabulary.clear();
    CHECK_THROWS_AS(mlp::mlp_classify(no_vocab, raw), DataError);
    auto no_norm = c;
    no_norm.norm.mean.clear();
    CHECK_THROWS_AS(mlp::mlp_classify(no_norm, raw), DataError);
    auto short_vocab = c;
    short_vocab.vocabulary.pop_back();
    CHECK_THROWS_AS(mlp::mlp_classify(short_vocab, raw), DataError);
}

TEST_CASE("mlp classifier text format round-trips bit-exactly") {
    const auto c = make_classifier(19);
    const std::string text = model::format_mlp(c);
    const auto parsed = model::parse_mlp(text, "mem");

    CHECK(parsed.vocabulary == c.vocabulary);
    REQUIRE(parsed.model.sizes == c.model.sizes);
    for (std::size_t l = 0; l < c.model.weights.size(); ++l) {
        CHECK(same_doubles(parsed.model.weights[l], c.model.weights[l]));
        CHECK(same_doubles(parsed.model.biases[l], c.model.biases[l]));
    }
    CHECK(same_doubles(parsed.norm.mean, c.norm.mean));
    CHECK(same_doubles(parsed.norm.stddev, c.norm.stddev));

    // A second format of the parsed model reproduces the text byte for byte.
    CHECK(model::format_mlp(parsed) == text);
}

TEST_CASE("anfis ensemble text format round-trips bit-exactly") {
    std::mt19937_64 rng(23);
    anfis::AnfisEnsemble e;
    e.vocabulary = {"go", "stop"};
    for (int cls = 0; cls < 2; ++cls) {
        anfis::AnfisModel m;
        m.input_dim = 3;
        for (int r = 0; r < 2; ++r) {
            anfis::Rule rule;
            for (int d = 0; d < 3; ++d)
                rule.antecedents.push_back({oracle::random_vector(rng, 1, -1.0, 1.0)[0],
                                            oracle::random_vector(rng, 1, 0.1, 2.0)[0]});
            rule.coeffs = oracle::random_vector(rng, 3, -5.0, 5.0);
            rule.bias = oracle::random_vector(rng, 1, -5.0, 5.0)[0];
            m.rules.push_back(std::move(rule));
        }
        e.models.push_back(std::move(m));
    }

    const std::string text = model::format_anfis(e);
    const auto parsed = model::parse_anfis(text, "mem");

    CHECK(parsed.vocabulary == e.vocabulary);
    REQUIRE(parsed.models.size() == 2);
    for (std::size_t cls = 0; cls < 2; ++cls) {
        const auto& want = e.models[cls];
        const auto& got = parsed.models[cls];
        CHECK(got.input_dim == want.input_dim);
        REQUIRE(got.rules.size() == want.rules.size());
        for (std::size_t r = 0; r < want.rules.size(); ++r) {
            for (std::size_t d = 0; d < 3; ++d) {
                CHECK(got.rules[r].antecedents[d].center == want.rules[r].antecedents[d].center);
                CHECK(got.rules[r].antecedents[d].sigma == want.rules[r].antecedents[d].sigma);
            }
            CHECK(same_doubles(got.rules[r].coeffs, want.rules[r].coeffs));
            CHECK(got.rules[r].bias == want.rules[r].bias);
        }
    }
    CHECK(model::format_anfis(parsed) == text);
}

TEST_CASE("parse_model dispatches on the kind line") {
    const auto c = make_classifier(3);
    const auto loaded = model::parse_model(model::format_mlp(c), "mem");
    CHECK(loaded.kind == model::ModelKind::MlpClassifier);
    CHECK(loaded.classifier.vocabulary == c.vocabulary);

    anfis::AnfisEnsemble e;
    e.vocabulary = {"a"};
    anfis::AnfisModel m;
    m.input_dim = 1;
    anfis::Rule r;
    r.antecedents = {{0.0, 1.0}};
    r.coeffs = {0.0};
    m.rules.push_back(r);
    e.models.push_back(m);
    const auto loaded2 = model::parse_model(model::format_anfis(e), "mem");
    CHECK(loaded2.kind == model::ModelKind::AnfisEnsemble);
    CHECK(loaded2.ensemble.vocabulary == e.vocabulary);
}
