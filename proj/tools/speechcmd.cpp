#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "speechcmd/config_file.hpp"
#include "speechcmd/errors.hpp"
#include "speechcmd/eval.hpp"
#include "speechcmd/features.hpp"
#include "speechcmd/model_io.hpp"
#include "speechcmd/pipeline.hpp"
#include "speechcmd/precision.hpp"
#include "speechcmd/synth.hpp"
#include "speechcmd/textio.hpp"
#include "speechcmd/wav.hpp"

namespace {

using namespace speechcmd;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitPartial = 4;

struct CommonArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

harness::RunConfig build_config(const CommonArgs& common) {
    harness::RunConfig cfg;
    if (!common.config_path.empty()) harness::apply_config_file(cfg, common.config_path);
    if (common.seed_given) cfg.seed = common.seed;
    return cfg;
}

harness::FrontendKind parse_frontend(const std::string& name) {
    if (name == "float") return harness::FrontendKind::Float;
    if (name == "fixed") return harness::FrontendKind::Fixed;
    throw ConfigError("frontend must be float or fixed, got '" + name + "'");
}

int run_synth(std::uint64_t seed, const std::string& out_dir, std::size_t per_class,
              int sample_rate) {
    harness::SynthConfig cfg;
    cfg.seed = seed;
    cfg.out_dir = out_dir;
    cfg.per_class = per_class;
    cfg.sample_rate_hz = sample_rate;
    const harness::SynthResult result = harness::synth_corpus(cfg);
    std::cout << "wrote " << result.wav_paths.size() << " wav files\n";
    std::cout << "manifest: " << result.manifest_path << "\n";
    return kExitOk;
}

int run_prepare(const CommonArgs& common, const std::string& manifest_path,
                const std::string& cache_path, const std::string& frontend) {
    harness::RunConfig cfg = build_config(common);
    cfg.pipeline.frontend_kind = parse_frontend(frontend);
    const audio::DatasetManifest manifest = audio::load_manifest(manifest_path, cfg.vocabulary);
    const harness::PrepareOutcome outcome =
        harness::prepare_features(manifest, manifest_path, cfg.pipeline);

    write_text_file(cache_path, feat::format_feature_cache(outcome.records));
    for (const harness::FileFailure& f : outcome.failures)
        std::cerr << "error: " << f.path << ": " << f.message << "\n";
    std::cout << "prepared " << outcome.records.size() << " of " << manifest.entries.size()
              << " files (" << harness::frontend_name(cfg.pipeline.frontend_kind)
              << " front-end) -> " << cache_path << "\n";
    return outcome.failures.empty() ? kExitOk : kExitPartial;
}

std::vector<harness::EvalSample> load_samples(const harness::RunConfig& cfg,
                                              const std::string& cache_path,
                                              const std::string& manifest_path) {
    const audio::DatasetManifest manifest = audio::load_manifest(manifest_path, cfg.vocabulary);
    const std::vector<feat::FeatureRecord> records = feat::read_feature_cache(cache_path);
    return harness::join_cache_with_manifest(records, manifest);
}

int run_train(const CommonArgs& common, const std::string& cache_path,
              const std::string& manifest_path, const std::string& classifier,
              const std::string& out_dir) {
    const harness::RunConfig cfg = build_config(common);
    const std::vector<harness::EvalSample> samples = load_samples(cfg, cache_path, manifest_path);
    std::vector<harness::EvalSample> train;
    for (const harness::EvalSample& s : samples)
        if (s.split == audio::Split::Train) train.push_back(s);
    if (train.empty()) throw DataError("training split is empty");

    std::filesystem::create_directories(out_dir);
    if (classifier == "anfis" || classifier == "both") {
        const harness::TrainedStep step = harness::make_anfis_trainer(cfg.anfis)(
            train, cfg.vocabulary);
        const model::LoadedModel loaded = model::parse_model(step.model_text, "<trained>");
        for (std::size_t c = 0; c < cfg.vocabulary.size(); ++c)
            std::cout << "anfis: class " << cfg.vocabulary[c] << " rules "
                      << loaded.ensemble.models[c].rules.size() << "\n";
        const std::string path = (std::filesystem::path(out_dir) / "anfis.model").string();
        write_text_file(path, step.model_text);
        std::cout << "anfis model -> " << path << "\n";
    }
    if (classifier == "mlp" || classifier == "both") {
        // Re-run training here to surface the loss curve, not just the model.
        std::vector<feat::FeatureVector> reduced;
        for (const harness::EvalSample& s : train)
            reduced.push_back(feat::drop_dc_channel(s.features));
        const harness::TrainedStep step =
            harness::make_mlp_trainer(cfg.mlp, cfg.seed)(train, cfg.vocabulary);
        const model::LoadedModel loaded = model::parse_model(step.model_text, "<trained>");
        const feat::NormalizationStats norm = loaded.classifier.norm;
        std::vector<std::vector<double>> inputs;
        std::vector<std::vector<double>> targets;
        for (std::size_t k = 0; k < train.size(); ++k) {
            inputs.push_back(feat::apply_normalizer(norm, reduced[k]));
            std::vector<double> y(cfg.vocabulary.size(), 0.0);
            y[train[k].label_index] = 1.0;
            targets.push_back(std::move(y));
        }
        mlp::MlpModel fresh =
            mlp::mlp_init({reduced.front().size(), cfg.mlp.hidden, cfg.vocabulary.size()},
                          cfg.seed);
        const std::vector<double> history = mlp::mlp_train(fresh, inputs, targets,
                                                           cfg.mlp.training);
        std::cout << "mlp: epochs " << history.size() << ", loss " << fmt_fixed(history.front(), 6)
                  << " -> " << fmt_fixed(history.back(), 6) << "\n";
        const std::string path = (std::filesystem::path(out_dir) / "mlp.model").string();
        write_text_file(path, step.model_text);
        std::cout << "mlp model -> " << path << "\n";
    }
    return kExitOk;
}

int run_eval(const CommonArgs& common, const std::string& cache_path,
             const std::string& manifest_path, const std::string& classifier,
             const std::string& out_dir) {
    const harness::RunConfig cfg = build_config(common);
    const std::vector<harness::EvalSample> samples = load_samples(cfg, cache_path, manifest_path);

    std::vector<std::pair<std::string, harness::Trainer>> trainers;
    if (classifier == "anfis" || classifier == "both")
        trainers.emplace_back("anfis", harness::make_anfis_trainer(cfg.anfis));
    if (classifier == "mlp" || classifier == "both")
        trainers.emplace_back("mlp", harness::make_mlp_trainer(cfg.mlp, cfg.seed));

    bool first = true;
    for (const auto& [name, trainer] : trainers) {
        const harness::EvaluationReport report =
            harness::evaluate_two_step(samples, cfg.vocabulary, trainer, name);
        if (!first) std::cout << "\n";
        first = false;
        std::cout << harness::render_report(report);
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            for (std::size_t s = 0; s < report.steps.size(); ++s) {
                const std::string path =
                    (std::filesystem::path(out_dir) /
                     (name + "-step" + std::to_string(s + 1) + ".model")).string();
                write_text_file(path, report.steps[s].model_text);
            }
            write_text_file(
                (std::filesystem::path(out_dir) / (name + "-report.txt")).string(),
                harness::render_report(report));
        }
    }
    return kExitOk;
}

int run_recognize(const CommonArgs& common, const std::string& model_path,
                  const std::string& wav_path, const std::string& frontend) {
    harness::RunConfig cfg = build_config(common);
    cfg.pipeline.frontend_kind = parse_frontend(frontend);
    const model::LoadedModel loaded = model::read_model_file(model_path);

    audio::Utterance u = audio::parse_wav_file(wav_path);
    u.source_id = wav_path;
    const feat::FeatureVector features = harness::extract_features(u, cfg.pipeline);

    std::vector<std::string> vocabulary;
    std::vector<double> scores;
    std::size_t best = 0;
    if (loaded.kind == model::ModelKind::AnfisEnsemble) {
        vocabulary = loaded.ensemble.vocabulary;
        const anfis::Classification c = anfis::classify(loaded.ensemble, features);
        best = c.label_index;
        scores = c.scores;
    } else {
        vocabulary = loaded.classifier.vocabulary;
        scores = mlp::mlp_scores(loaded.classifier, features);
        best = mlp::mlp_classify(loaded.classifier, features);
    }

    std::cout << "label: " << vocabulary[best] << "\n";
    std::cout << "scores:\n";
    for (std::size_t c = 0; c < vocabulary.size(); ++c)
        std::cout << "  " << vocabulary[c] << " " << fmt_double(scores[c]) << "\n";
    return kExitOk;
}

int run_compare(const CommonArgs& common, const std::string& manifest_path,
                const std::string& frontend) {
    const harness::RunConfig cfg = build_config(common);
    const audio::DatasetManifest manifest = audio::load_manifest(manifest_path, cfg.vocabulary);
    const harness::PrecisionReport report = harness::compare_precision(
        manifest, manifest_path, cfg, parse_frontend(frontend));
    for (const harness::FileFailure& f : report.failures)
        std::cerr << "error: " << f.path << ": " << f.message << "\n";
    std::cout << harness::render_precision_report(report);
    if (!report.failures.empty()) return kExitPartial;
    return report.pass ? kExitOk : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Speech-command recognition toolkit"};
    app.require_subcommand(1);

    CommonArgs common;

    auto add_common = [&common](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "key = value config override file");
        cmd->add_option("--seed", common.seed, "random seed")
            ->each([&common](const std::string&) { common.seed_given = true; });
    };

    // synth-corpus
    auto* synth = app.add_subcommand("synth-corpus", "Generate a deterministic test corpus");
    std::uint64_t synth_seed = 1;
    std::string synth_out = "corpus";
    std::size_t per_class = 24;
    int sample_rate = 16000;
    synth->add_option("--seed", synth_seed, "corpus seed");
    synth->add_option("--out", synth_out, "output directory");
    synth->add_option("--per-class", per_class, "utterances per command");
    synth->add_option("--sample-rate", sample_rate, "sample rate in Hz");

    // prepare
    auto* prepare = app.add_subcommand("prepare", "Extract features for a manifest");
    std::string manifest_path, cache_path, frontend = "float";
    prepare->add_option("--manifest", manifest_path, "dataset manifest")->required();
    prepare->add_option("--cache", cache_path, "output feature cache")->required();
    prepare->add_option("--frontend", frontend, "float or fixed front-end");
    add_common(prepare);

    // train
    auto* train = app.add_subcommand("train", "Train classifiers on the train split");
    std::string classifier = "anfis";
    std::string out_dir = ".";
    train->add_option("--cache", cache_path, "feature cache")->required();
    train->add_option("--manifest", manifest_path, "dataset manifest")->required();
    train->add_option("--classifier", classifier, "anfis, mlp, or both")
        ->check(CLI::IsMember({"anfis", "mlp", "both"}));
    train->add_option("--out", out_dir, "model output directory");
    add_common(train);

    // eval
    auto* eval = app.add_subcommand("eval", "Two-step swap evaluation");
    std::string eval_classifier = "both";
    std::string eval_out;
    eval->add_option("--cache", cache_path, "feature cache")->required();
    eval->add_option("--manifest", manifest_path, "dataset manifest")->required();
    eval->add_option("--classifier", eval_classifier, "anfis, mlp, or both")
        ->check(CLI::IsMember({"anfis", "mlp", "both"}));
    eval->add_option("--out", eval_out, "directory for per-step models and reports");
    add_common(eval);

    // recognize
    auto* recognize = app.add_subcommand("recognize", "Classify a single wav file");
    std::string model_path, wav_path, rec_frontend = "float";
    recognize->add_option("--model", model_path, "trained model file")->required();
    recognize->add_option("wav", wav_path, "input wav file")->required();
    recognize->add_option("--frontend", rec_frontend, "float or fixed front-end");
    add_common(recognize);

    // compare-precision
    auto* compare = app.add_subcommand("compare-precision",
                                       "Fixed- vs floating-point front-end comparison");
    std::string cmp_frontend = "fixed";
    compare->add_option("--manifest", manifest_path, "dataset manifest")->required();
    compare->add_option("--frontend", cmp_frontend, "candidate front-end (float or fixed)");
    add_common(compare);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (synth->parsed()) return run_synth(synth_seed, synth_out, per_class, sample_rate);
        if (prepare->parsed()) return run_prepare(common, manifest_path, cache_path, frontend);
        if (train->parsed())
            return run_train(common, cache_path, manifest_path, classifier, out_dir);
        if (eval->parsed())
            return run_eval(common, cache_path, manifest_path, eval_classifier, eval_out);
        if (recognize->parsed()) return run_recognize(common, model_path, wav_path, rec_frontend);
        if (compare->parsed()) return run_compare(common, manifest_path, cmp_frontend);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
