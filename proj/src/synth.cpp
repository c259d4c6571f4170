#include "speechcmd/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <system_error>

#include "speechcmd/errors.hpp"
#include "speechcmd/manifest.hpp"
#include "speechcmd/rng.hpp"
#include "speechcmd/textio.hpp"
#include "speechcmd/wav.hpp"

namespace speechcmd::harness {

namespace {

struct ClassTemplate {
    const char* label;
    std::array<double, 3> freqs_hz;
    std::array<double, 3> amps;
};

// Distinct formant-like triples; the highest component stays under Nyquist
// after the speaker shift and jitter (3300 * 1.08 * 1.03 < 8000).
constexpr std::array<ClassTemplate, 4> kTemplates = {{
    {"left", {500.0, 1500.0, 2500.0}, {1.0, 0.6, 0.25}},
    {"right", {750.0, 1900.0, 3100.0}, {1.0, 0.55, 0.3}},
    {"up", {400.0, 2300.0, 3300.0}, {0.9, 0.7, 0.3}},
    {"down", {950.0, 1250.0, 2800.0}, {1.0, 0.65, 0.35}},
}};

struct Speaker {
    const char* id;
    double formant_scale;
};

constexpr std::array<Speaker, 2> kSpeakers = {{{"s1", 1.0}, {"s2", 1.08}}};

audio::Utterance synth_one(const ClassTemplate& tpl, const Speaker& spk, int fs, Rng& rng) {
    const double duration_s = rng.uniform(0.35, 0.6);
    const double lead_s = rng.uniform(0.08, 0.16);
    const double trail_s = rng.uniform(0.08, 0.16);
    const double level = rng.uniform(0.3, 0.6);

    std::array<double, 3> freqs{}, amps{}, phases{};
    double amp_total = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
        freqs[c] = tpl.freqs_hz[c] * spk.formant_scale * (1.0 + rng.uniform(-0.03, 0.03));
        amps[c] = tpl.amps[c] * (1.0 + rng.uniform(-0.1, 0.1));
        phases[c] = rng.uniform(0.0, 2.0 * std::numbers::pi);
        amp_total += amps[c];
    }

    const std::size_t n_lead = static_cast<std::size_t>(std::llround(lead_s * fs));
    const std::size_t n_speech = static_cast<std::size_t>(std::llround(duration_s * fs));
    const std::size_t n_trail = static_cast<std::size_t>(std::llround(trail_s * fs));

    audio::Utterance u;
    u.sample_rate_hz = fs;
    u.label = tpl.label;
    u.samples.resize(n_lead + n_speech + n_trail);

    const double attack_s = 0.03;
    const double release_s = 0.06;
    for (std::size_t n = 0; n < u.samples.size(); ++n) {
        const bool in_speech = n >= n_lead && n < n_lead + n_speech;
        double v = rng.normal() * (in_speech ? 0.004 : 0.0015);
        if (in_speech) {
            const double t = static_cast<double>(n - n_lead) / fs;
            const double env = std::max(
                0.0, std::min({1.0, t / attack_s, (duration_s - t) / release_s}));
            double tone = 0.0;
            for (std::size_t c = 0; c < 3; ++c)
                tone += amps[c] * std::sin(2.0 * std::numbers::pi * freqs[c] * t + phases[c]);
            v += level * env * tone / amp_total;
        }
        u.samples[n] = std::clamp(v, -1.0, 1.0);
    }
    return u;
}

}  // namespace

SynthResult synth_corpus(const SynthConfig& cfg) {
    if (cfg.per_class == 0) throw ConfigError("synth_corpus: per_class must be positive");
    if (cfg.sample_rate_hz < 8000) throw ConfigError("synth_corpus: sample rate too low");
    if (cfg.out_dir.empty()) throw ConfigError("synth_corpus: output directory not set");

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(fs::path(cfg.out_dir) / "wav", ec);
    if (ec)
        throw DataError("synth_corpus: cannot create '" + cfg.out_dir + "': " + ec.message());

    Rng rng(cfg.seed);
    SynthResult result;
    std::string manifest_text =
        "# synthetic speech-command corpus, seed " + std::to_string(cfg.seed) + "\n";

    for (const ClassTemplate& tpl : kTemplates) {
        for (std::size_t s = 0; s < kSpeakers.size(); ++s) {
            const Speaker& spk = kSpeakers[s];
            const std::size_t count = s == 0 ? (cfg.per_class + 1) / 2 : cfg.per_class / 2;
            if (count == 0) continue;

            std::vector<std::string> rel_paths(count);
            for (std::size_t idx = 0; idx < count; ++idx) {
                char name[64];
                std::snprintf(name, sizeof name, "wav/%s_%s_%03zu.wav", tpl.label, spk.id, idx);
                rel_paths[idx] = name;
                audio::Utterance u = synth_one(tpl, spk, cfg.sample_rate_hz, rng);
                const std::string full = (fs::path(cfg.out_dir) / name).string();
                audio::write_wav_file(full, u);
                result.wav_paths.push_back(full);
            }

            std::vector<std::size_t> order(count);
            for (std::size_t i = 0; i < count; ++i) order[i] = i;
            rng.shuffle(order);
            const std::size_t train_count = (count + 1) / 2;
            std::vector<audio::Split> splits(count, audio::Split::Test);
            for (std::size_t i = 0; i < train_count; ++i) splits[order[i]] = audio::Split::Train;

            for (std::size_t idx = 0; idx < count; ++idx)
                manifest_text += rel_paths[idx] + "," + tpl.label + "," + spk.id + "," +
                                 audio::split_name(splits[idx]) + "\n";
        }
    }

    result.manifest_path = (fs::path(cfg.out_dir) / "manifest.csv").string();
    write_text_file(result.manifest_path, manifest_text);
    return result;
}

}  // namespace speechcmd::harness
