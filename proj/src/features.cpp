#include "speechcmd/features.hpp"

#include <cmath>
#include <sstream>

#include "speechcmd/errors.hpp"
#include "speechcmd/textio.hpp"

namespace speechcmd::feat {

FeatureVector compress_features(const dsp::CepstralMatrix& c) {
    if (c.num_frames == 0 || c.num_cepstra == 0)
        throw DataError("compress_features: empty cepstral matrix");
    FeatureVector f(c.num_cepstra);
    for (std::size_t k = 0; k < c.num_cepstra; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < c.num_frames; ++j) acc += c.at(k, j);
        f[k] = acc / static_cast<double>(c.num_frames);
    }
    return f;
}

FeatureVector drop_dc_channel(const FeatureVector& f) {
    if (f.size() != 13)
        throw DataError("drop_dc_channel: expected 13 channels, got " + std::to_string(f.size()));
    return FeatureVector(f.begin() + 1, f.end());
}

NormalizationStats fit_normalizer(const std::vector<FeatureVector>& train) {
    if (train.size() < 2) throw DataError("fit_normalizer: need at least 2 training vectors");
    const std::size_t dim = train.front().size();
    for (const auto& v : train)
        if (v.size() != dim) throw DataError("fit_normalizer: inconsistent feature dimensions");

    NormalizationStats stats;
    stats.mean.assign(dim, 0.0);
    stats.stddev.assign(dim, 0.0);
    const double n = static_cast<double>(train.size());
    for (const auto& v : train)
        for (std::size_t d = 0; d < dim; ++d) stats.mean[d] += v[d];
    for (std::size_t d = 0; d < dim; ++d) stats.mean[d] /= n;
    for (const auto& v : train)
        for (std::size_t d = 0; d < dim; ++d) {
            const double delta = v[d] - stats.mean[d];
            stats.stddev[d] += delta * delta;
        }
    for (std::size_t d = 0; d < dim; ++d) {
        stats.stddev[d] = std::sqrt(stats.stddev[d] / n);
        if (stats.stddev[d] <= 0.0)
            throw DataError("fit_normalizer: dimension " + std::to_string(d) +
                            " has zero variance on the training split");
    }
    return stats;
}

FeatureVector apply_normalizer(const NormalizationStats& stats, const FeatureVector& f) {
    if (f.size() != stats.mean.size())
        throw DataError("apply_normalizer: dimension mismatch (" + std::to_string(f.size()) +
                        " vs " + std::to_string(stats.mean.size()) + ")");
    FeatureVector out(f.size());
    for (std::size_t d = 0; d < f.size(); ++d) out[d] = (f[d] - stats.mean[d]) / stats.stddev[d];
    return out;
}

FeatureVector denormalize(const NormalizationStats& stats, const FeatureVector& f) {
    if (f.size() != stats.mean.size())
        throw DataError("denormalize: dimension mismatch");
    FeatureVector out(f.size());
    for (std::size_t d = 0; d < f.size(); ++d) out[d] = f[d] * stats.stddev[d] + stats.mean[d];
    return out;
}

std::string format_feature_cache(const std::vector<FeatureRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        out += r.source_id;
        out += ',';
        out += r.label;
        for (double v : r.values) {
            out += ',';
            out += fmt_double(v);
        }
        out += '\n';
    }
    return out;
}

std::vector<FeatureRecord> parse_feature_cache(const std::string& text, const std::string& origin) {
    std::vector<FeatureRecord> records;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto fields = split(t, ',');
        if (fields.size() < 3)
            throw DataError(origin + ":" + std::to_string(line_no) + ": malformed cache line");
        FeatureRecord r;
        r.source_id = fields[0];
        r.label = fields[1];
        r.values.reserve(fields.size() - 2);
        for (std::size_t i = 2; i < fields.size(); ++i)
            r.values.push_back(parse_double(fields[i], origin + ":" + std::to_string(line_no)));
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<FeatureRecord> read_feature_cache(const std::string& path) {
    return parse_feature_cache(read_text_file(path), path);
}

}  // namespace speechcmd::feat
