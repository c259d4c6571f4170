#pragma once

#include <string>

#include "speechcmd/anfis.hpp"
#include "speechcmd/mlp.hpp"

namespace speechcmd::model {

// Versioned text format, one logical record per line, numbers written with
// 17 significant digits so a parse round-trips bit-exactly. The second line
// carries a kind discriminator (`anfis-ensemble` or `mlp-classifier`).
// Vocabulary entries are space-separated on one line, so labels must not
// contain whitespace.

enum class ModelKind { AnfisEnsemble, MlpClassifier };

std::string format_anfis(const anfis::AnfisEnsemble& e);
std::string format_mlp(const mlp::MlpClassifier& c);

anfis::AnfisEnsemble parse_anfis(const std::string& text, const std::string& origin);
mlp::MlpClassifier parse_mlp(const std::string& text, const std::string& origin);

struct LoadedModel {
    ModelKind kind = ModelKind::AnfisEnsemble;
    anfis::AnfisEnsemble ensemble;   // set when kind == AnfisEnsemble
    mlp::MlpClassifier classifier;   // set when kind == MlpClassifier
};

LoadedModel parse_model(const std::string& text, const std::string& origin);
LoadedModel read_model_file(const std::string& path);

}  // namespace speechcmd::model
