#include "speechcmd/precision.hpp"

#include <algorithm>
#include <cmath>

#include "speechcmd/errors.hpp"
#include "speechcmd/eval.hpp"
#include "speechcmd/textio.hpp"

namespace speechcmd::harness {

PrecisionReport compare_precision(const audio::DatasetManifest& manifest,
                                  const std::string& manifest_path, const RunConfig& cfg,
                                  FrontendKind candidate) {
    PrecisionReport report;
    report.candidate = candidate;
    report.channels.assign(cfg.pipeline.frontend.num_cepstra, {});

    struct ComparedFile {
        const audio::ManifestEntry* entry;
        feat::FeatureVector baseline_features;
        feat::FeatureVector candidate_features;
    };
    std::vector<ComparedFile> compared;
    std::vector<double> channel_sums(cfg.pipeline.frontend.num_cepstra, 0.0);

    for (const audio::ManifestEntry& entry : manifest.entries) {
        try {
            audio::Utterance u = audio::parse_wav_file(resolve_path(manifest_path, entry.path));
            u.source_id = entry.path;
            const dsp::CepstralMatrix base = extract_cepstra(u, cfg.pipeline, FrontendKind::Float);
            const dsp::CepstralMatrix cand = extract_cepstra(u, cfg.pipeline, candidate);
            if (base.num_frames != cand.num_frames || base.num_cepstra != cand.num_cepstra)
                throw DataError("front-ends disagree on output shape for '" + entry.path + "'");

            for (std::size_t k = 0; k < base.num_cepstra; ++k) {
                for (std::size_t j = 0; j < base.num_frames; ++j) {
                    const double err = std::abs(cand.at(k, j) - base.at(k, j));
                    report.channels[k].max_abs = std::max(report.channels[k].max_abs, err);
                    channel_sums[k] += err;
                    if (k == 0) {
                        const double rel = err / std::max(std::abs(base.at(0, j)), 1e-12);
                        report.c0_max_rel = std::max(report.c0_max_rel, rel);
                    }
                }
            }
            report.frames_compared += base.num_frames;
            ++report.files_compared;
            compared.push_back({&entry, feat::compress_features(base),
                                feat::compress_features(cand)});
        } catch (const ConfigError&) {
            throw;  // configuration problems are not per-file conditions
        } catch (const std::exception& e) {
            report.failures.push_back({entry.path, e.what()});
        }
    }

    const std::size_t total_frames = report.frames_compared;
    if (total_frames > 0)
        for (std::size_t k = 0; k < report.channels.size(); ++k)
            report.channels[k].mean_abs = channel_sums[k] / static_cast<double>(total_frames);

    // Label agreement: an ensemble trained on baseline training features
    // classifies each test file's baseline and candidate features.
    std::vector<EvalSample> train;
    for (const ComparedFile& f : compared) {
        if (f.entry->split != audio::Split::Train) continue;
        const auto it = std::find(manifest.vocabulary.begin(), manifest.vocabulary.end(),
                                  f.entry->label);
        if (it == manifest.vocabulary.end())
            throw DataError("label '" + f.entry->label + "' is not in the vocabulary");
        EvalSample s;
        s.features = f.baseline_features;
        s.label_index = static_cast<std::size_t>(it - manifest.vocabulary.begin());
        s.speaker_id = f.entry->speaker_id;
        s.split = f.entry->split;
        s.source_id = f.entry->path;
        train.push_back(std::move(s));
    }
    if (!train.empty()) {
        const TrainedStep trained = make_anfis_trainer(cfg.anfis)(train, manifest.vocabulary);
        for (const ComparedFile& f : compared) {
            if (f.entry->split != audio::Split::Test) continue;
            ++report.agree_total;
            if (trained.classify(f.baseline_features) == trained.classify(f.candidate_features))
                ++report.agree;
        }
    }

    double worst_abs = 0.0;
    for (std::size_t k = 1; k < report.channels.size(); ++k)
        worst_abs = std::max(worst_abs, report.channels[k].max_abs);
    const double agreement = report.agree_total == 0
        ? 1.0
        : static_cast<double>(report.agree) / static_cast<double>(report.agree_total);
    report.pass = report.files_compared > 0 && worst_abs <= kMaxAbsErrorBound &&
                  report.c0_max_rel <= kC0MaxRelBound && agreement >= kAgreementBound;
    return report;
}

std::string render_precision_report(const PrecisionReport& report) {
    std::string out = "Precision comparison: float baseline vs " +
                      std::string(frontend_name(report.candidate)) + " candidate\n";
    out += "Files compared: " + std::to_string(report.files_compared) + " (" +
           std::to_string(report.failures.size()) + " failed), frames: " +
           std::to_string(report.frames_compared) + "\n\n";

    out += "  channel       max abs      mean abs\n";
    for (std::size_t k = 0; k < report.channels.size(); ++k) {
        std::string row = "  C" + std::to_string(k);
        while (row.size() < 9) row += ' ';
        std::string max_s = fmt_fixed(report.channels[k].max_abs, 8);
        std::string mean_s = fmt_fixed(report.channels[k].mean_abs, 8);
        while (max_s.size() < 13) max_s = ' ' + max_s;
        while (mean_s.size() < 13) mean_s = ' ' + mean_s;
        out += row + max_s + " " + mean_s + "\n";
    }

    double worst_abs = 0.0;
    for (std::size_t k = 1; k < report.channels.size(); ++k)
        worst_abs = std::max(worst_abs, report.channels[k].max_abs);
    const double agreement = report.agree_total == 0
        ? 1.0
        : static_cast<double>(report.agree) / static_cast<double>(report.agree_total);

    out += "\nMax abs error C1..: " + fmt_fixed(worst_abs, 8) + " (bound " +
           fmt_fixed(kMaxAbsErrorBound, 2) + ")\n";
    out += "C0 max relative error: " + fmt_fixed(report.c0_max_rel, 8) + " (bound " +
           fmt_fixed(kC0MaxRelBound, 2) + ")\n";
    out += "Label agreement on test split: " + std::to_string(report.agree) + "/" +
           std::to_string(report.agree_total) + " (" + fmt_fixed(agreement * 100.0, 2) +
           "%, bound " + fmt_fixed(kAgreementBound * 100.0, 0) + "%)\n";

    out += "result precision candidate=" + std::string(frontend_name(report.candidate)) +
           " files=" + std::to_string(report.files_compared) +
           " failures=" + std::to_string(report.failures.size()) +
           " max_abs=" + fmt_double(worst_abs) + " c0_max_rel=" + fmt_double(report.c0_max_rel) +
           " agreement=" + fmt_double(agreement) + "\n";
    out += report.pass ? "PASS (all precision bounds satisfied)\n"
                       : "FAIL (precision bounds exceeded)\n";
    return out;
}

}  // namespace speechcmd::harness
