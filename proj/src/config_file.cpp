#include "speechcmd/config_file.hpp"

#include <sstream>

#include "speechcmd/errors.hpp"
#include "speechcmd/textio.hpp"

namespace speechcmd::harness {

namespace {

std::size_t parse_size(const std::string& value, const std::string& ctx) {
    const long v = parse_long(value, ctx);
    if (v < 0) throw ConfigError(ctx + ": must be non-negative");
    return static_cast<std::size_t>(v);
}

void apply_one(RunConfig& cfg, const std::string& key, const std::string& value,
               const std::string& ctx) {
    if (key == "vad.frame_ms")
        cfg.pipeline.vad.frame_ms = parse_double(value, ctx);
    else if (key == "vad.energy_threshold_ratio")
        cfg.pipeline.vad.energy_threshold_ratio = parse_double(value, ctx);
    else if (key == "vad.hangover_frames")
        cfg.pipeline.vad.hangover_frames = static_cast<int>(parse_long(value, ctx));
    else if (key == "vad.min_segment_ms")
        cfg.pipeline.vad.min_segment_ms = parse_double(value, ctx);
    else if (key == "frontend.frame_length_ms")
        cfg.pipeline.frontend.frame_length_ms = parse_double(value, ctx);
    else if (key == "frontend.hop_ms")
        cfg.pipeline.frontend.hop_ms = parse_double(value, ctx);
    else if (key == "frontend.fft_size")
        cfg.pipeline.frontend.fft_size = parse_size(value, ctx);
    else if (key == "frontend.num_mel_filters")
        cfg.pipeline.frontend.num_mel_filters = parse_size(value, ctx);
    else if (key == "frontend.num_cepstra")
        cfg.pipeline.frontend.num_cepstra = parse_size(value, ctx);
    else if (key == "frontend.low_freq_hz")
        cfg.pipeline.frontend.low_freq_hz = parse_double(value, ctx);
    else if (key == "frontend.high_freq_hz")
        cfg.pipeline.frontend.high_freq_hz = parse_double(value, ctx);
    else if (key == "frontend.pre_emphasis")
        cfg.pipeline.frontend.pre_emphasis = parse_double(value, ctx);
    else if (key == "frontend.energy_floor")
        cfg.pipeline.frontend.energy_floor = parse_double(value, ctx);
    else if (key == "fixed.log_lut_bits")
        cfg.pipeline.fixed.log_lut_bits = static_cast<int>(parse_long(value, ctx));
    else if (key == "fixed.cos_table_size")
        cfg.pipeline.fixed.cos_table_size = parse_size(value, ctx);
    else if (key == "anfis.radius")
        cfg.anfis.clustering.radius = parse_double(value, ctx);
    else if (key == "anfis.squash_factor")
        cfg.anfis.clustering.squash_factor = parse_double(value, ctx);
    else if (key == "anfis.accept_ratio")
        cfg.anfis.clustering.accept_ratio = parse_double(value, ctx);
    else if (key == "anfis.reject_ratio")
        cfg.anfis.clustering.reject_ratio = parse_double(value, ctx);
    else if (key == "anfis.epochs")
        cfg.anfis.training.epochs = parse_size(value, ctx);
    else if (key == "anfis.learning_rate")
        cfg.anfis.training.learning_rate = parse_double(value, ctx);
    else if (key == "mlp.hidden")
        cfg.mlp.hidden = parse_size(value, ctx);
    else if (key == "mlp.epochs")
        cfg.mlp.training.epochs = parse_size(value, ctx);
    else if (key == "mlp.learning_rate")
        cfg.mlp.training.learning_rate = parse_double(value, ctx);
    else if (key == "vocab") {
        std::vector<std::string> vocab;
        for (const std::string& t : split(value, ' '))
            if (!trim(t).empty()) vocab.push_back(trim(t));
        if (vocab.empty()) throw ConfigError(ctx + ": vocab must list at least one label");
        cfg.vocabulary = std::move(vocab);
    } else {
        throw ConfigError(ctx + ": unknown config key '" + key + "'");
    }
}

}  // namespace

void apply_config_overrides(RunConfig& cfg, const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        const std::string ctx = origin + ":" + std::to_string(line_no);
        if (eq == std::string::npos)
            throw ConfigError(ctx + ": expected 'key = value', got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(ctx + ": expected 'key = value', got '" + t + "'");
        apply_one(cfg, key, value, ctx);
    }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    apply_config_overrides(cfg, read_text_file(path), path);
}

}  // namespace speechcmd::harness
