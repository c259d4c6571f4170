#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "speechcmd/eval.hpp"
#include "speechcmd/pipeline.hpp"

namespace speechcmd::harness {

// Everything a CLI run needs beyond its file arguments.
struct RunConfig {
    PipelineConfig pipeline;
    AnfisRunConfig anfis;
    MlpRunConfig mlp;
    std::vector<std::string> vocabulary = audio::default_vocabulary();
    std::uint64_t seed = 0;
};

// `key = value` lines, `#` comments. Keys are dotted module paths, e.g.
// vad.frame_ms, frontend.num_mel_filters, fixed.log_lut_bits, anfis.radius,
// mlp.epochs, vocab. Unknown keys are config errors naming the key.
void apply_config_overrides(RunConfig& cfg, const std::string& text, const std::string& origin);

void apply_config_file(RunConfig& cfg, const std::string& path);

}  // namespace speechcmd::harness
