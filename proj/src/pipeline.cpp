#include "speechcmd/pipeline.hpp"

#include <filesystem>

#include "speechcmd/errors.hpp"

namespace speechcmd::harness {

const char* frontend_name(FrontendKind k) { return k == FrontendKind::Float ? "float" : "fixed"; }

std::string resolve_path(const std::string& manifest_path, const std::string& entry_path) {
    namespace fs = std::filesystem;
    fs::path entry(entry_path);
    if (entry.is_absolute()) return entry_path;
    return (fs::path(manifest_path).parent_path() / entry).string();
}

dsp::CepstralMatrix extract_cepstra(const audio::Utterance& u, const PipelineConfig& cfg,
                                    FrontendKind kind) {
    const auto segments = audio::energy_vad(u, cfg.vad);
    if (segments.empty())
        throw DataError("no speech detected in '" + u.source_id + "'");
    const audio::Utterance voiced = audio::slice(u, audio::longest_segment(segments));
    return kind == FrontendKind::Float ? dsp::mfcc(voiced, cfg.frontend)
                                       : fixed::fixed_mfcc(voiced, cfg.frontend, cfg.fixed);
}

feat::FeatureVector extract_features(const audio::Utterance& u, const PipelineConfig& cfg) {
    return feat::compress_features(extract_cepstra(u, cfg, cfg.frontend_kind));
}

PrepareOutcome prepare_features(const audio::DatasetManifest& manifest,
                                const std::string& manifest_path, const PipelineConfig& cfg) {
    PrepareOutcome outcome;
    for (const audio::ManifestEntry& entry : manifest.entries) {
        try {
            audio::Utterance u = audio::parse_wav_file(resolve_path(manifest_path, entry.path));
            u.source_id = entry.path;
            u.label = entry.label;
            feat::FeatureRecord record;
            record.source_id = entry.path;
            record.label = entry.label;
            record.values = extract_features(u, cfg);
            outcome.records.push_back(std::move(record));
        } catch (const std::exception& e) {
            outcome.failures.push_back({entry.path, e.what()});
        }
    }
    return outcome;
}

}  // namespace speechcmd::harness
