#include "speechcmd/eval.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>

#include "speechcmd/errors.hpp"
#include "speechcmd/model_io.hpp"

namespace speechcmd::harness {

std::vector<EvalSample> join_cache_with_manifest(const std::vector<feat::FeatureRecord>& records,
                                                 const audio::DatasetManifest& manifest) {
    std::unordered_map<std::string, const audio::ManifestEntry*> by_path;
    for (const audio::ManifestEntry& e : manifest.entries) by_path[e.path] = &e;

    std::vector<EvalSample> samples;
    samples.reserve(records.size());
    for (const feat::FeatureRecord& r : records) {
        const auto it = by_path.find(r.source_id);
        if (it == by_path.end())
            throw DataError("cache entry '" + r.source_id + "' is not in the manifest");
        const audio::ManifestEntry& e = *it->second;
        if (e.label != r.label)
            throw DataError("cache entry '" + r.source_id + "' label '" + r.label +
                            "' disagrees with manifest label '" + e.label + "'");
        const auto vit =
            std::find(manifest.vocabulary.begin(), manifest.vocabulary.end(), r.label);
        if (vit == manifest.vocabulary.end())
            throw DataError("cache entry '" + r.source_id + "': label '" + r.label +
                            "' is not in the vocabulary");

        EvalSample s;
        s.features = r.values;
        s.label_index = static_cast<std::size_t>(vit - manifest.vocabulary.begin());
        s.speaker_id = e.speaker_id;
        s.split = e.split;
        s.source_id = r.source_id;
        samples.push_back(std::move(s));
    }
    return samples;
}

namespace {

void check_class_coverage(const std::vector<EvalSample>& train,
                          const std::vector<std::string>& vocabulary) {
    std::vector<std::size_t> counts(vocabulary.size(), 0);
    for (const EvalSample& s : train) {
        if (s.label_index >= vocabulary.size())
            throw DataError("training sample '" + s.source_id + "' has an out-of-range label");
        ++counts[s.label_index];
    }
    for (std::size_t c = 0; c < vocabulary.size(); ++c)
        if (counts[c] == 0)
            throw DataError("no training samples for class '" + vocabulary[c] + "'");
}

}  // namespace

Trainer make_anfis_trainer(const AnfisRunConfig& cfg) {
    return [cfg](const std::vector<EvalSample>& train,
                 const std::vector<std::string>& vocabulary) -> TrainedStep {
        if (train.empty()) throw DataError("anfis trainer: empty training split");
        check_class_coverage(train, vocabulary);

        std::vector<std::vector<double>> inputs;
        std::vector<std::size_t> labels;
        inputs.reserve(train.size());
        labels.reserve(train.size());
        for (const EvalSample& s : train) {
            inputs.push_back(s.features);
            labels.push_back(s.label_index);
        }

        auto ensemble = std::make_shared<anfis::AnfisEnsemble>(
            anfis::train_ensemble(inputs, labels, vocabulary, cfg.clustering, cfg.training));
        TrainedStep step;
        step.model_text = model::format_anfis(*ensemble);
        step.classify = [ensemble](const feat::FeatureVector& f) {
            return anfis::classify(*ensemble, f).label_index;
        };
        return step;
    };
}

Trainer make_mlp_trainer(const MlpRunConfig& cfg, std::uint64_t seed) {
    return [cfg, seed](const std::vector<EvalSample>& train,
                       const std::vector<std::string>& vocabulary) -> TrainedStep {
        if (train.empty()) throw DataError("mlp trainer: empty training split");
        check_class_coverage(train, vocabulary);

        std::vector<feat::FeatureVector> reduced;
        reduced.reserve(train.size());
        for (const EvalSample& s : train) reduced.push_back(feat::drop_dc_channel(s.features));
        const feat::NormalizationStats norm = feat::fit_normalizer(reduced);

        std::vector<std::vector<double>> inputs;
        std::vector<std::vector<double>> targets;
        inputs.reserve(train.size());
        targets.reserve(train.size());
        for (std::size_t k = 0; k < train.size(); ++k) {
            inputs.push_back(feat::apply_normalizer(norm, reduced[k]));
            std::vector<double> y(vocabulary.size(), 0.0);
            y[train[k].label_index] = 1.0;
            targets.push_back(std::move(y));
        }

        const std::size_t input_dim = reduced.front().size();
        mlp::MlpModel model = mlp::mlp_init({input_dim, cfg.hidden, vocabulary.size()}, seed);
        mlp::mlp_train(model, inputs, targets, cfg.training);

        auto classifier = std::make_shared<mlp::MlpClassifier>();
        classifier->vocabulary = vocabulary;
        classifier->model = std::move(model);
        classifier->norm = norm;
        TrainedStep step;
        step.model_text = model::format_mlp(*classifier);
        step.classify = [classifier](const feat::FeatureVector& f) {
            return mlp::mlp_classify(*classifier, f);
        };
        return step;
    };
}

EvaluationReport evaluate_two_step(const std::vector<EvalSample>& samples,
                                   const std::vector<std::string>& vocabulary,
                                   const Trainer& trainer, const std::string& classifier_name) {
    std::vector<EvalSample> train_split, test_split;
    for (const EvalSample& s : samples)
        (s.split == audio::Split::Train ? train_split : test_split).push_back(s);
    if (train_split.empty()) throw DataError("evaluate_two_step: train split is empty");
    if (test_split.empty()) throw DataError("evaluate_two_step: test split is empty");

    EvaluationReport report;
    report.vocabulary = vocabulary;
    report.classifier_name = classifier_name;

    for (int step_idx = 0; step_idx < 2; ++step_idx) {
        const std::vector<EvalSample>& train = step_idx == 0 ? train_split : test_split;
        const std::vector<EvalSample>& test = step_idx == 0 ? test_split : train_split;

        const TrainedStep trained = trainer(train, vocabulary);
        std::vector<Prediction> predictions;
        predictions.reserve(test.size());
        for (const EvalSample& s : test) {
            Prediction p;
            p.source_id = s.source_id;
            p.speaker_id = s.speaker_id;
            p.actual = s.label_index;
            p.predicted = trained.classify(s.features);
            predictions.push_back(std::move(p));
        }
        StepReport step = tally_step(vocabulary, predictions);
        step.model_text = trained.model_text;
        report.steps.push_back(std::move(step));
    }
    return report;
}

}  // namespace speechcmd::harness
