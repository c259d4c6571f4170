#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "speechcmd/errors.hpp"
#include "speechcmd/features.hpp"

using namespace speechcmd;

namespace {

dsp::CepstralMatrix random_matrix(std::mt19937_64& rng, std::size_t k, std::size_t n) {
    dsp::CepstralMatrix c;
    c.num_cepstra = k;
    c.num_frames = n;
    c.values = oracle::random_vector(rng, k * n, -20.0, 20.0);
    return c;
}

}  // namespace

TEST_CASE("compress_features closed forms") {
    dsp::CepstralMatrix c;
    c.num_cepstra = 13;
    c.num_frames = 4;
    c.values.resize(52);
    for (std::size_t k = 0; k < 13; ++k)
        for (std::size_t j = 0; j < 4; ++j) c.at(k, j) = static_cast<double>(k) * 0.5;
    const feat::FeatureVector f = feat::compress_features(c);
    REQUIRE(f.size() == 13);
    for (std::size_t k = 0; k < 13; ++k) CHECK(f[k] == doctest::Approx(k * 0.5).epsilon(1e-15));

    dsp::CepstralMatrix two;
    two.num_cepstra = 1;
    two.num_frames = 2;
    two.values = {1.0, 3.0};
    CHECK(feat::compress_features(two)[0] == 2.0);

    dsp::CepstralMatrix empty;
    empty.num_cepstra = 13;
    empty.num_frames = 0;
    CHECK_THROWS_AS(feat::compress_features(empty), DataError);
}

TEST_CASE("compress_features matches the per-row mean oracle") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const dsp::CepstralMatrix c = random_matrix(rng, 13, 50);
        const feat::FeatureVector got = feat::compress_features(c);
        const std::vector<double> want = oracle::mean_rows(c);
        for (std::size_t k = 0; k < 13; ++k) CHECK(oracle::rel_err(got[k], want[k]) < 1e-14);
    }
}

TEST_CASE("compress_features ignores frame order and repetition") {
    std::mt19937_64 rng(23);
    const dsp::CepstralMatrix c = random_matrix(rng, 13, 24);

    // Permuted columns.
    std::vector<std::size_t> perm(c.num_frames);
    for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = j;
    std::shuffle(perm.begin(), perm.end(), rng);
    dsp::CepstralMatrix shuffled = c;
    for (std::size_t k = 0; k < c.num_cepstra; ++k)
        for (std::size_t j = 0; j < c.num_frames; ++j) shuffled.at(k, j) = c.at(k, perm[j]);

    // The matrix concatenated with itself.
    dsp::CepstralMatrix doubled;
    doubled.num_cepstra = c.num_cepstra;
    doubled.num_frames = 2 * c.num_frames;
    doubled.values.resize(doubled.num_cepstra * doubled.num_frames);
    for (std::size_t k = 0; k < c.num_cepstra; ++k)
        for (std::size_t j = 0; j < doubled.num_frames; ++j)
            doubled.at(k, j) = c.at(k, j % c.num_frames);

    const auto base = feat::compress_features(c);
    const auto from_shuffled = feat::compress_features(shuffled);
    const auto from_doubled = feat::compress_features(doubled);
    for (std::size_t k = 0; k < 13; ++k) {
        CHECK(from_shuffled[k] == doctest::Approx(base[k]).epsilon(1e-13));
        CHECK(from_doubled[k] == doctest::Approx(base[k]).epsilon(1e-13));
    }
}

TEST_CASE("drop_dc_channel removes exactly the first value") {
    feat::FeatureVector f(13);
    for (std::size_t i = 0; i < 13; ++i) f[i] = static_cast<double>(i) + 0.25;
    const feat::FeatureVector d = feat::drop_dc_channel(f);
    REQUIRE(d.size() == 12);
    for (std::size_t i = 0; i < 12; ++i) CHECK(d[i] == f[i + 1]);

    const feat::FeatureVector zeros = feat::drop_dc_channel(feat::FeatureVector(13, 0.0));
    CHECK(zeros == feat::FeatureVector(12, 0.0));

    CHECK_THROWS_AS(feat::drop_dc_channel(feat::FeatureVector(12, 0.0)), DataError);
}

TEST_CASE("drop_dc_channel commutes with compression") {
    std::mt19937_64 rng(29);
    const dsp::CepstralMatrix c = random_matrix(rng, 13, 31);

    dsp::CepstralMatrix trimmed;
    trimmed.num_cepstra = 12;
    trimmed.num_frames = c.num_frames;
    trimmed.values.assign(c.values.begin() + static_cast<std::ptrdiff_t>(c.num_frames),
                          c.values.end());

    const auto via_vector = feat::drop_dc_channel(feat::compress_features(c));
    const auto via_matrix = feat::compress_features(trimmed);
    REQUIRE(via_vector.size() == via_matrix.size());
    for (std::size_t i = 0; i < 12; ++i) CHECK(via_vector[i] == via_matrix[i]);
}

TEST_CASE("fit_normalizer computes population statistics") {
    std::vector<feat::FeatureVector> train{{0.0, 5.0}, {2.0, 5.5}};
    const feat::NormalizationStats stats = feat::fit_normalizer(train);
    CHECK(stats.mean[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(stats.stddev[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(stats.mean[1] == doctest::Approx(5.25).epsilon(1e-15));
    CHECK(stats.stddev[1] == doctest::Approx(0.25).epsilon(1e-12));

    CHECK_THROWS_AS(feat::fit_normalizer({{1.0, 2.0}}), DataError);

    std::vector<feat::FeatureVector> degenerate{{1.0, 3.0}, {2.0, 3.0}};
    CHECK_THROWS_WITH_AS(feat::fit_normalizer(degenerate), doctest::Contains("1"), DataError);
}

TEST_CASE("normalizing the training set gives mean 0 and std 1") {
    std::mt19937_64 rng(31);
    std::vector<feat::FeatureVector> train;
    for (int i = 0; i < 40; ++i) train.push_back(oracle::random_vector(rng, 12, -3.0, 7.0));
    const feat::NormalizationStats stats = feat::fit_normalizer(train);

    std::vector<double> mean(12, 0.0), var(12, 0.0);
    for (const auto& f : train) {
        const auto z = feat::apply_normalizer(stats, f);
        for (std::size_t d = 0; d < 12; ++d) mean[d] += z[d];
    }
    for (double& m : mean) m /= static_cast<double>(train.size());
    for (const auto& f : train) {
        const auto z = feat::apply_normalizer(stats, f);
        for (std::size_t d = 0; d < 12; ++d) var[d] += (z[d] - mean[d]) * (z[d] - mean[d]);
    }
    for (std::size_t d = 0; d < 12; ++d) {
        CHECK(std::abs(mean[d]) <= 1e-12);
        CHECK(std::abs(std::sqrt(var[d] / static_cast<double>(train.size())) - 1.0) <= 1e-12);
    }
}

TEST_CASE("apply_normalizer closed forms and inverse") {
    std::vector<feat::FeatureVector> train{{0.0, 10.0}, {4.0, 30.0}, {2.0, 20.0}};
    const feat::NormalizationStats stats = feat::fit_normalizer(train);

    const auto at_mean = feat::apply_normalizer(stats, stats.mean);
    for (double v : at_mean) CHECK(v == 0.0);

    feat::FeatureVector shifted(2);
    for (std::size_t d = 0; d < 2; ++d) shifted[d] = stats.mean[d] + stats.stddev[d];
    const auto ones = feat::apply_normalizer(stats, shifted);
    for (double v : ones) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

    std::mt19937_64 rng(37);
    const feat::FeatureVector f = oracle::random_vector(rng, 2, -5.0, 5.0);
    const auto round = feat::denormalize(stats, feat::apply_normalizer(stats, f));
    for (std::size_t d = 0; d < 2; ++d) CHECK(round[d] == doctest::Approx(f[d]).epsilon(1e-12));

    CHECK_THROWS_AS(feat::apply_normalizer(stats, feat::FeatureVector(3, 0.0)), DataError);
}

TEST_CASE("feature cache round-trips and reports malformed lines") {
    std::vector<feat::FeatureRecord> records;
    std::mt19937_64 rng(41);
    for (int i = 0; i < 5; ++i) {
        feat::FeatureRecord r;
        r.source_id = "wav/file" + std::to_string(i) + ".wav";
        r.label = i % 2 == 0 ? "left" : "down";
        r.values = oracle::random_vector(rng, 13, -30.0, 30.0);
        records.push_back(std::move(r));
    }
    const std::string text = feat::format_feature_cache(records);
    const auto parsed = feat::parse_feature_cache(text, "cache");
    REQUIRE(parsed.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(parsed[i].source_id == records[i].source_id);
        CHECK(parsed[i].label == records[i].label);
        REQUIRE(parsed[i].values.size() == 13);
        for (std::size_t d = 0; d < 13; ++d) CHECK(parsed[i].values[d] == records[i].values[d]);
    }

    CHECK_THROWS_WITH_AS(feat::parse_feature_cache("a.wav,left\n", "cache"),
                         doctest::Contains("cache"), DataError);
    CHECK_THROWS_AS(feat::parse_feature_cache(
                        "a.wav,left,1,2,3,4,5,6,7,8,9,10,11,12,not_a_number\n", "cache"),
                    DataError);
}
