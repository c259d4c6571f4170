#include "speechcmd/model_io.hpp"

#include <sstream>

#include "speechcmd/errors.hpp"
#include "speechcmd/textio.hpp"

namespace speechcmd::model {

namespace {

constexpr const char* kMagic = "speechcmd-model";
constexpr int kVersion = 1;

void check_vocabulary(const std::vector<std::string>& vocabulary) {
    if (vocabulary.empty()) throw DataError("model: empty vocabulary");
    for (const std::string& label : vocabulary) {
        if (label.empty()) throw DataError("model: empty vocabulary entry");
        for (char c : label)
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
                throw DataError("model: vocabulary entry '" + label + "' contains whitespace");
    }
}

void append_values(std::string& out, const std::vector<double>& values) {
    for (double v : values) {
        out += ' ';
        out += fmt_double(v);
    }
    out += '\n';
}

// Line-oriented token reader with positional error messages.
class Lines {
public:
    Lines(const std::string& text, const std::string& origin) : origin_(origin) {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) lines_.push_back(trim(line));
    }

    std::vector<std::string> next(const std::string& expected_head) {
        while (pos_ < lines_.size() && lines_[pos_].empty()) ++pos_;
        if (pos_ >= lines_.size())
            throw DataError(origin_ + ": unexpected end of model file, expected '" +
                            expected_head + "'");
        std::vector<std::string> tokens;
        for (const std::string& t : split(lines_[pos_], ' '))
            if (!t.empty()) tokens.push_back(t);
        if (tokens.empty() || tokens[0] != expected_head)
            throw DataError(origin_ + ":" + std::to_string(pos_ + 1) + ": expected '" +
                            expected_head + "', got '" + lines_[pos_] + "'");
        ++pos_;
        return tokens;
    }

    std::string context(const std::string& what) const {
        return origin_ + ":" + std::to_string(pos_) + ": " + what;
    }

private:
    std::string origin_;
    std::vector<std::string> lines_;
    std::size_t pos_ = 0;
};

std::vector<double> parse_values(Lines& lines, const std::vector<std::string>& tokens,
                                 std::size_t offset, std::size_t expected_count,
                                 const std::string& what) {
    if (tokens.size() != offset + expected_count)
        throw DataError(lines.context(what + ": expected " + std::to_string(expected_count) +
                                      " values, got " + std::to_string(tokens.size() - offset)));
    std::vector<double> values(expected_count);
    for (std::size_t i = 0; i < expected_count; ++i)
        values[i] = parse_double(tokens[offset + i], lines.context(what));
    return values;
}

std::vector<std::string> parse_header(Lines& lines, const std::string& kind) {
    const auto magic = lines.next(kMagic);
    if (magic.size() != 2 || parse_long(magic[1], lines.context("format version")) != kVersion)
        throw DataError(lines.context("unsupported model format version"));
    const auto kind_line = lines.next("kind");
    if (kind_line.size() != 2 || kind_line[1] != kind)
        throw DataError(lines.context("expected kind " + kind));
    auto vocab_line = lines.next("vocabulary");
    if (vocab_line.size() < 2) throw DataError(lines.context("empty vocabulary"));
    return {vocab_line.begin() + 1, vocab_line.end()};
}

}  // namespace

std::string format_anfis(const anfis::AnfisEnsemble& e) {
    check_vocabulary(e.vocabulary);
    if (e.models.size() != e.vocabulary.size())
        throw DataError("model: ensemble has " + std::to_string(e.models.size()) +
                        " models for " + std::to_string(e.vocabulary.size()) + " labels");
    for (const anfis::AnfisModel& m : e.models) m.validate();

    std::string out = std::string(kMagic) + " " + std::to_string(kVersion) + "\n";
    out += "kind anfis-ensemble\n";
    out += "vocabulary";
    for (const std::string& label : e.vocabulary) out += " " + label;
    out += "\ninput_dim " + std::to_string(e.models.front().input_dim) + "\n";
    for (std::size_t c = 0; c < e.models.size(); ++c) {
        const anfis::AnfisModel& m = e.models[c];
        out += "class " + e.vocabulary[c] + " rules " + std::to_string(m.rules.size()) + "\n";
        for (const anfis::Rule& r : m.rules) {
            out += "center";
            for (const anfis::GaussianMF& mf : r.antecedents) out += " " + fmt_double(mf.center);
            out += "\nsigma";
            for (const anfis::GaussianMF& mf : r.antecedents) out += " " + fmt_double(mf.sigma);
            out += "\ncoeffs";
            append_values(out, r.coeffs);
            out += "bias " + fmt_double(r.bias) + "\n";
        }
    }
    return out;
}

anfis::AnfisEnsemble parse_anfis(const std::string& text, const std::string& origin) {
    Lines lines(text, origin);
    anfis::AnfisEnsemble e;
    e.vocabulary = parse_header(lines, "anfis-ensemble");
    const auto dim_line = lines.next("input_dim");
    if (dim_line.size() != 2) throw DataError(lines.context("malformed input_dim"));
    const long dim = parse_long(dim_line[1], lines.context("input_dim"));
    if (dim < 1) throw DataError(lines.context("input_dim must be positive"));

    for (const std::string& label : e.vocabulary) {
        const auto class_line = lines.next("class");
        if (class_line.size() != 4 || class_line[1] != label || class_line[2] != "rules")
            throw DataError(lines.context("expected class " + label));
        const long num_rules = parse_long(class_line[3], lines.context("rule count"));
        if (num_rules < 1) throw DataError(lines.context("rule count must be positive"));

        anfis::AnfisModel m;
        m.input_dim = static_cast<std::size_t>(dim);
        for (long r = 0; r < num_rules; ++r) {
            const auto center_line = lines.next("center");
            const auto centers = parse_values(lines, center_line, 1,
                                              static_cast<std::size_t>(dim), "center");
            const auto sigma_line = lines.next("sigma");
            const auto sigmas = parse_values(lines, sigma_line, 1,
                                             static_cast<std::size_t>(dim), "sigma");
            const auto coeff_line = lines.next("coeffs");
            anfis::Rule rule;
            rule.coeffs = parse_values(lines, coeff_line, 1, static_cast<std::size_t>(dim),
                                       "coeffs");
            const auto bias_line = lines.next("bias");
            if (bias_line.size() != 2) throw DataError(lines.context("malformed bias"));
            rule.bias = parse_double(bias_line[1], lines.context("bias"));
            rule.antecedents.resize(static_cast<std::size_t>(dim));
            for (std::size_t d = 0; d < static_cast<std::size_t>(dim); ++d)
                rule.antecedents[d] = {centers[d], sigmas[d]};
            m.rules.push_back(std::move(rule));
        }
        m.validate();
        e.models.push_back(std::move(m));
    }
    return e;
}

std::string format_mlp(const mlp::MlpClassifier& c) {
    check_vocabulary(c.vocabulary);
    c.model.validate();
    if (c.model.sizes.back() != c.vocabulary.size())
        throw DataError("model: mlp output size does not match vocabulary");
    if (c.norm.mean.size() != c.model.sizes.front() ||
        c.norm.stddev.size() != c.model.sizes.front())
        throw DataError("model: normalizer dimension does not match mlp input");

    std::string out = std::string(kMagic) + " " + std::to_string(kVersion) + "\n";
    out += "kind mlp-classifier\n";
    out += "vocabulary";
    for (const std::string& label : c.vocabulary) out += " " + label;
    out += "\nlayers";
    for (std::size_t s : c.model.sizes) out += " " + std::to_string(s);
    out += "\n";
    for (std::size_t l = 0; l < c.model.weights.size(); ++l) {
        out += "weights " + std::to_string(l);
        append_values(out, c.model.weights[l]);
        out += "biases " + std::to_string(l);
        append_values(out, c.model.biases[l]);
    }
    out += "norm_mean";
    append_values(out, c.norm.mean);
    out += "norm_std";
    append_values(out, c.norm.stddev);
    return out;
}

mlp::MlpClassifier parse_mlp(const std::string& text, const std::string& origin) {
    Lines lines(text, origin);
    mlp::MlpClassifier c;
    c.vocabulary = parse_header(lines, "mlp-classifier");

    const auto layer_line = lines.next("layers");
    if (layer_line.size() < 3) throw DataError(lines.context("need at least 2 layers"));
    for (std::size_t i = 1; i < layer_line.size(); ++i) {
        const long s = parse_long(layer_line[i], lines.context("layer size"));
        if (s < 1) throw DataError(lines.context("layer sizes must be positive"));
        c.model.sizes.push_back(static_cast<std::size_t>(s));
    }

    for (std::size_t l = 0; l + 1 < c.model.sizes.size(); ++l) {
        const auto w_line = lines.next("weights");
        if (w_line.size() < 2 ||
            parse_long(w_line[1], lines.context("weights index")) != static_cast<long>(l))
            throw DataError(lines.context("expected weights " + std::to_string(l)));
        c.model.weights.push_back(
            parse_values(lines, w_line, 2, c.model.sizes[l] * c.model.sizes[l + 1], "weights"));
        const auto b_line = lines.next("biases");
        if (b_line.size() < 2 ||
            parse_long(b_line[1], lines.context("biases index")) != static_cast<long>(l))
            throw DataError(lines.context("expected biases " + std::to_string(l)));
        c.model.biases.push_back(parse_values(lines, b_line, 2, c.model.sizes[l + 1], "biases"));
    }

    const auto mean_line = lines.next("norm_mean");
    c.norm.mean = parse_values(lines, mean_line, 1, c.model.sizes.front(), "norm_mean");
    const auto std_line = lines.next("norm_std");
    c.norm.stddev = parse_values(lines, std_line, 1, c.model.sizes.front(), "norm_std");
    for (double s : c.norm.stddev)
        if (!(s > 0.0)) throw DataError(origin + ": normalizer std must be positive");

    c.model.validate();
    if (c.model.sizes.back() != c.vocabulary.size())
        throw DataError(origin + ": mlp output size does not match vocabulary");
    return c;
}

LoadedModel parse_model(const std::string& text, const std::string& origin) {
    Lines probe(text, origin);
    probe.next(kMagic);
    const auto kind_line = probe.next("kind");
    if (kind_line.size() != 2) throw DataError(origin + ": malformed kind line");

    LoadedModel loaded;
    if (kind_line[1] == "anfis-ensemble") {
        loaded.kind = ModelKind::AnfisEnsemble;
        loaded.ensemble = parse_anfis(text, origin);
    } else if (kind_line[1] == "mlp-classifier") {
        loaded.kind = ModelKind::MlpClassifier;
        loaded.classifier = parse_mlp(text, origin);
    } else {
        throw DataError(origin + ": unknown model kind '" + kind_line[1] + "'");
    }
    return loaded;
}

LoadedModel read_model_file(const std::string& path) {
    return parse_model(read_text_file(path), path);
}

}  // namespace speechcmd::model
