// Acceptance checks for the toolkit, one printed line per criterion. The
// library-level criteria drive speechcmd_core directly against the naive
// reference implementations in oracles.hpp; the corpus-level criteria drive
// the CLI binary whose path arrives as argv[1]. Exits nonzero if any
// criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "speechcmd/anfis.hpp"
#include "speechcmd/anfis_train.hpp"
#include "speechcmd/config_file.hpp"
#include "speechcmd/features.hpp"
#include "speechcmd/frontend.hpp"
#include "speechcmd/manifest.hpp"
#include "speechcmd/mlp.hpp"
#include "speechcmd/precision.hpp"
#include "speechcmd/subclust.hpp"

namespace {

namespace fs = std::filesystem;
using namespace speechcmd;
using Clock = std::chrono::steady_clock;

int g_failed = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
    if (ok) {
        std::cout << "PASS: " << name << "\n";
    } else {
        std::cout << "FAIL: " << name << (detail.empty() ? "" : " (" + detail + ")") << "\n";
        ++g_failed;
    }
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

template <typename Fn>
void criterion(const std::string& name, Fn&& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(name, false, std::string("unexpected exception: ") + e.what());
    }
}

// ---------------------------------------------------------------- CLI glue

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr, merged
};

CliResult run_cli(const std::string& command) {
    const std::string full = command + " 2>&1";
    FILE* pipe = popen(full.c_str(), "r");
    if (!pipe) return {};
    CliResult r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    const int status = pclose(pipe);
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    return r;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

std::string read_bytes(const fs::path& path) {
    std::string out;
    FILE* f = std::fopen(path.string().c_str(), "rb");
    if (!f) return out;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    std::fclose(f);
    return out;
}

// Relative path -> bytes for every regular file under root, which may
// itself be a single file.
std::map<std::string, std::string> snapshot_dir(const fs::path& root) {
    std::map<std::string, std::string> files;
    if (!fs::exists(root)) return files;
    if (fs::is_regular_file(root)) {
        files[root.filename().string()] = read_bytes(root);
        return files;
    }
    for (const auto& entry : fs::recursive_directory_iterator(root))
        if (entry.is_regular_file())
            files[fs::relative(entry.path(), root).string()] = read_bytes(entry.path());
    return files;
}

struct ResultLine {
    std::string classifier;
    std::string step;
    std::string speaker;
    double accuracy = 0.0;
};

std::vector<ResultLine> parse_result_lines(const std::string& text) {
    std::vector<ResultLine> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("result classifier=", 0) != 0) continue;
        ResultLine r;
        std::istringstream fields(line);
        std::string tok;
        while (fields >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq);
            const std::string value = tok.substr(eq + 1);
            if (key == "classifier") r.classifier = value;
            if (key == "step") r.step = value;
            if (key == "speaker") r.speaker = value;
            if (key == "accuracy") r.accuracy = std::stod(value);
        }
        lines.push_back(std::move(r));
    }
    return lines;
}

// ------------------------------------------------- criterion implementations

// dct_cepstrum, filterbank_energies, anfis_forward, and mlp_forward against
// the plain-loop oracles, 100 random cases each, within 1e-12 relative.
void check_oracle_equivalence() {
    const std::string name = "pipeline routines match naive oracles";
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20260819);
    double worst = 0.0;
    std::string worst_where;
    auto track = [&](const std::string& where, double err) {
        if (err > worst) {
            worst = err;
            worst_where = where;
        }
    };

    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 10 + rng() % 31;
        const std::size_t k = 1 + rng() % std::min<std::size_t>(13, n);
        const auto energies = oracle::random_vector(rng, n, 1e-6, 10.0);
        track("dct_cepstrum", oracle::vec_rel_err(dsp::dct_cepstrum(energies, k),
                                                  oracle::dct(energies, k)));
    }

    for (int t = 0; t < 100; ++t) {
        dsp::FrontendConfig cfg;
        cfg.num_mel_filters = 20 + rng() % 13;
        const dsp::FilterBank fb = dsp::build_mel_filterbank(cfg, 16000);
        const auto power = oracle::random_vector(rng, fb.num_bins, 0.0, 5.0);
        track("filterbank_energies",
              oracle::vec_rel_err(dsp::filterbank_energies(power, fb, cfg.energy_floor),
                                  oracle::filterbank_energies(power, fb, cfg.energy_floor)));
    }

    for (int t = 0; t < 100; ++t) {
        const std::size_t dims = 2 + rng() % 4;
        anfis::AnfisModel m;
        m.input_dim = dims;
        const std::size_t num_rules = 2 + rng() % 3;
        for (std::size_t r = 0; r < num_rules; ++r) {
            anfis::Rule rule;
            for (std::size_t d = 0; d < dims; ++d)
                rule.antecedents.push_back({oracle::random_vector(rng, 1, -1.0, 1.0)[0],
                                            oracle::random_vector(rng, 1, 0.4, 1.2)[0]});
            rule.coeffs = oracle::random_vector(rng, dims, -2.0, 2.0);
            rule.bias = oracle::random_vector(rng, 1, -2.0, 2.0)[0];
            m.rules.push_back(std::move(rule));
        }
        const auto x = oracle::random_vector(rng, dims, -1.5, 1.5);
        track("anfis_forward",
              oracle::rel_err(anfis::anfis_forward(m, x).output, oracle::anfis_forward(m, x)));
    }

    for (int t = 0; t < 100; ++t) {
        const std::size_t in = 2 + rng() % 5;
        const std::size_t hidden = 3 + rng() % 6;
        const std::size_t out = 2 + rng() % 4;
        const auto m = mlp::mlp_init({in, hidden, out}, rng());
        const auto x = oracle::random_vector(rng, in, -1.5, 1.5);
        track("mlp_forward", oracle::vec_rel_err(mlp::mlp_forward(m, x), oracle::mlp_forward(m, x)));
    }

    const double elapsed = seconds_since(t0);
    if (worst > 1e-12) {
        report(name, false, worst_where + " rel err " + fmt(worst));
    } else if (elapsed >= 10.0) {
        report(name, false, "took " + fmt(elapsed) + " s, budget 10 s");
    } else {
        report(name, true);
    }
}

// Constant energies leave only the dc channel; log-energies built from a
// single cosine mode put exactly N/2 into C_1.
void check_dct_identities() {
    const std::string name = "dct analytic identities";
    double worst_const = 0.0;
    for (const double value : {0.5, 2.5, 7.0}) {
        for (const std::size_t n : {13u, 26u, 40u}) {
            const std::vector<double> energies(n, value);
            const auto c = dsp::dct_cepstrum(energies, std::min<std::size_t>(13, n));
            for (std::size_t k = 1; k < c.size(); ++k)
                worst_const = std::max(worst_const, std::abs(c[k]));
        }
    }
    if (worst_const > 1e-12) {
        report(name, false, "constant energies leak " + fmt(worst_const) + " into C_k, k >= 1");
        return;
    }

    double worst_cosine = 0.0;
    for (const std::size_t n : {13u, 26u, 40u}) {
        std::vector<double> energies(n);
        for (std::size_t i = 1; i <= n; ++i)
            energies[i - 1] = std::exp(std::cos(std::numbers::pi * (static_cast<double>(i) - 0.5) /
                                                static_cast<double>(n)));
        const auto c = dsp::dct_cepstrum(energies, 2);
        worst_cosine = std::max(worst_cosine, std::abs(c[1] - static_cast<double>(n) / 2.0));
    }
    if (worst_cosine > 1e-10) {
        report(name, false, "cosine log-energies give |C_1 - N/2| = " + fmt(worst_cosine));
        return;
    }
    report(name, true);
}

// compress_features equals the per-row mean oracle and ignores frame order,
// 100 random matrices, within 1e-14.
void check_feature_compression() {
    const std::string name = "feature compression mean and permutation invariance";
    std::mt19937_64 rng(31415);
    double worst = 0.0;
    std::string worst_what;
    for (int t = 0; t < 100; ++t) {
        dsp::CepstralMatrix c;
        c.num_cepstra = 1 + rng() % 13;
        c.num_frames = 1 + rng() % 32;
        c.values = oracle::random_vector(rng, c.num_cepstra * c.num_frames, -1.0, 1.0);

        const auto mean = feat::compress_features(c);
        const auto want = oracle::mean_rows(c);
        for (std::size_t k = 0; k < mean.size(); ++k)
            if (std::abs(mean[k] - want[k]) > worst) {
                worst = std::abs(mean[k] - want[k]);
                worst_what = "mean oracle";
            }

        std::vector<std::size_t> perm(c.num_frames);
        for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = j;
        std::shuffle(perm.begin(), perm.end(), rng);
        dsp::CepstralMatrix shuffled = c;
        for (std::size_t k = 0; k < c.num_cepstra; ++k)
            for (std::size_t j = 0; j < c.num_frames; ++j)
                shuffled.at(k, j) = c.at(k, perm[j]);
        const auto permuted = feat::compress_features(shuffled);
        for (std::size_t k = 0; k < mean.size(); ++k)
            if (std::abs(mean[k] - permuted[k]) > worst) {
                worst = std::abs(mean[k] - permuted[k]);
                worst_what = "permutation";
            }
    }
    report(name, worst <= 1e-14, worst_what + " deviates by " + fmt(worst));
}

// ANFIS premise gradients and every MLP weight and bias gradient against
// central finite differences, 100 seeds each.
void check_gradients() {
    const std::string name = "analytic gradients match finite differences";
    const auto t0 = Clock::now();
    const double h = 1e-6;
    double worst = 0.0;
    std::string worst_where;
    auto track = [&](const std::string& where, double analytic, double numeric) {
        const double rel = std::abs(analytic - numeric) /
                           std::max({std::abs(analytic), std::abs(numeric), 1e-6});
        if (rel > worst) {
            worst = rel;
            worst_where = where;
        }
    };

    for (unsigned seed = 1; seed <= 100; ++seed) {
        std::mt19937_64 rng(seed);
        anfis::AnfisModel m;
        m.input_dim = 2 + rng() % 2;
        for (int r = 0; r < 2; ++r) {
            anfis::Rule rule;
            for (std::size_t d = 0; d < m.input_dim; ++d)
                rule.antecedents.push_back({oracle::random_vector(rng, 1, -1.0, 1.0)[0],
                                            oracle::random_vector(rng, 1, 0.4, 1.2)[0]});
            rule.coeffs = oracle::random_vector(rng, m.input_dim, -1.0, 1.0);
            rule.bias = oracle::random_vector(rng, 1, -1.0, 1.0)[0];
            m.rules.push_back(std::move(rule));
        }
        std::vector<std::vector<double>> inputs;
        std::vector<double> targets;
        for (int k = 0; k < 10; ++k) {
            inputs.push_back(oracle::random_vector(rng, m.input_dim, -1.0, 1.0));
            targets.push_back(oracle::random_vector(rng, 1, -1.0, 1.0)[0]);
        }
        const auto g = anfis::premise_gradient(m, inputs, targets);
        for (std::size_t r = 0; r < m.rules.size(); ++r)
            for (std::size_t d = 0; d < m.input_dim; ++d) {
                auto plus = m;
                auto minus = m;
                plus.rules[r].antecedents[d].center += h;
                minus.rules[r].antecedents[d].center -= h;
                track("anfis center",
                      g.d_center[r * m.input_dim + d],
                      (anfis::anfis_loss(plus, inputs, targets) -
                       anfis::anfis_loss(minus, inputs, targets)) / (2.0 * h));
                plus = m;
                minus = m;
                plus.rules[r].antecedents[d].sigma += h;
                minus.rules[r].antecedents[d].sigma -= h;
                track("anfis sigma",
                      g.d_sigma[r * m.input_dim + d],
                      (anfis::anfis_loss(plus, inputs, targets) -
                       anfis::anfis_loss(minus, inputs, targets)) / (2.0 * h));
            }
    }

    for (unsigned seed = 1; seed <= 100; ++seed) {
        std::mt19937_64 rng(seed);
        auto m = mlp::mlp_init({3, 5, 2}, seed);
        std::vector<std::vector<double>> inputs;
        std::vector<std::vector<double>> targets;
        for (int k = 0; k < 8; ++k) {
            inputs.push_back(oracle::random_vector(rng, 3, -1.5, 1.5));
            std::vector<double> y(2, 0.0);
            y[rng() % 2] = 1.0;
            targets.push_back(std::move(y));
        }
        const auto g = mlp::mlp_gradient(m, inputs, targets);
        for (std::size_t l = 0; l < m.weights.size(); ++l) {
            for (std::size_t i = 0; i < m.weights[l].size(); ++i) {
                auto plus = m;
                auto minus = m;
                plus.weights[l][i] += h;
                minus.weights[l][i] -= h;
                track("mlp weight", g.d_weights[l][i],
                      (mlp::mlp_loss(plus, inputs, targets) -
                       mlp::mlp_loss(minus, inputs, targets)) / (2.0 * h));
            }
            for (std::size_t i = 0; i < m.biases[l].size(); ++i) {
                auto plus = m;
                auto minus = m;
                plus.biases[l][i] += h;
                minus.biases[l][i] -= h;
                track("mlp bias", g.d_biases[l][i],
                      (mlp::mlp_loss(plus, inputs, targets) -
                       mlp::mlp_loss(minus, inputs, targets)) / (2.0 * h));
            }
        }
    }

    const double elapsed = seconds_since(t0);
    if (worst > 1e-4) {
        report(name, false, worst_where + " rel err " + fmt(worst));
    } else if (elapsed >= 60.0) {
        report(name, false, "took " + fmt(elapsed) + " s, budget 60 s");
    } else {
        report(name, true);
    }
}

// Two well-separated blobs give exactly the two centers the brute-force
// potential oracle picks; a single point is its own center.
void check_clustering() {
    const std::string name = "subtractive clustering picks oracle centers";
    std::mt19937_64 rng(777);
    std::vector<std::vector<double>> data;
    for (int i = 0; i < 30; ++i) {
        const auto p = oracle::random_vector(rng, 2, -0.1, 0.1);
        data.push_back({p[0], p[1]});
    }
    for (int i = 0; i < 30; ++i) {
        const auto p = oracle::random_vector(rng, 2, -0.1, 0.1);
        data.push_back({p[0] + 5.0, p[1] + 5.0});
    }

    anfis::ClusteringConfig cfg;
    cfg.radius = 0.5;
    const auto centers = anfis::subtractive_clustering(data, cfg);
    const auto want = oracle::subclust(data, cfg.radius, cfg.squash_factor, cfg.accept_ratio,
                                       cfg.reject_ratio);
    if (centers.size() != 2) {
        report(name, false, "two blobs gave " + std::to_string(centers.size()) + " centers");
        return;
    }
    if (centers != want) {
        report(name, false, "centers differ from the brute-force oracle");
        return;
    }
    const bool one_per_blob = (centers[0][0] < 2.5) != (centers[1][0] < 2.5);
    if (!one_per_blob) {
        report(name, false, "both centers landed in the same blob");
        return;
    }

    const std::vector<std::vector<double>> lone = {{1.25, -0.5}};
    const auto single = anfis::subtractive_clustering(lone, {});
    report(name, single.size() == 1 && single[0] == lone[0],
           "single point did not come back as its own center");
}

// Hybrid training never lets the recorded loss rise, and the XOR benchmark
// reaches MSE < 0.01 within 50 epochs.
void check_hybrid_training() {
    const std::string name = "hybrid training rollback and xor benchmark";
    for (unsigned seed = 1; seed <= 10; ++seed) {
        std::mt19937_64 rng(seed);
        std::vector<std::vector<double>> inputs;
        std::vector<double> targets;
        for (int k = 0; k < 15; ++k) {
            inputs.push_back(oracle::random_vector(rng, 2, -1.0, 1.0));
            targets.push_back(oracle::random_vector(rng, 1, -1.0, 1.0)[0]);
        }
        anfis::ClusteringConfig cluster_cfg;
        cluster_cfg.radius = 0.4;
        auto m = anfis::init_from_centers(anfis::subtractive_clustering(inputs, cluster_cfg),
                                          inputs, cluster_cfg.radius);
        anfis::HybridTrainConfig cfg;
        cfg.epochs = 30;
        cfg.learning_rate = 0.05;
        const auto result = anfis::train_hybrid(m, inputs, targets, cfg);
        for (std::size_t e = 1; e < result.loss_history.size(); ++e)
            if (result.loss_history[e] > result.loss_history[e - 1] + 1e-12) {
                report(name, false,
                       "loss rose at epoch " + std::to_string(e) + " on seed " +
                           std::to_string(seed));
                return;
            }
    }

    const std::vector<std::vector<double>> inputs = {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0},
                                                     {1.0, 1.0}};
    const std::vector<double> targets = {0.0, 1.0, 1.0, 0.0};
    anfis::ClusteringConfig cluster_cfg;
    auto m = anfis::init_from_centers(anfis::subtractive_clustering(inputs, cluster_cfg), inputs,
                                      cluster_cfg.radius);
    anfis::HybridTrainConfig cfg;
    cfg.epochs = 50;
    const auto result = anfis::train_hybrid(m, inputs, targets, cfg);
    for (std::size_t e = 1; e < result.loss_history.size(); ++e)
        if (result.loss_history[e] > result.loss_history[e - 1] + 1e-12) {
            report(name, false, "xor loss rose at epoch " + std::to_string(e));
            return;
        }
    const double mse = result.loss_history.back() / static_cast<double>(inputs.size());
    report(name, mse < 0.01, "xor mse " + fmt(mse) + " after 50 epochs");
}

struct Workspace {
    fs::path base;
    fs::path corpus;
    fs::path manifest;
    fs::path cache;
    bool ready = false;
};

// Full synthetic run through the CLI: 96 files split 48/48, then the
// two-step evaluation with ANFIS at or above 95% and the MLP at or above
// 90% in every reported cell.
void check_two_step_accuracy(const std::string& cli, Workspace& ws) {
    const std::string name = "two-step synthetic corpus accuracy";
    const auto t0 = Clock::now();

    ws.corpus = ws.base / "corpus";
    ws.manifest = ws.corpus / "manifest.csv";
    ws.cache = ws.base / "float.cache";

    const CliResult synth =
        run_cli(cli + " synth-corpus --seed 1 --out " + q(ws.corpus));
    if (synth.exit_code != 0) {
        report(name, false, "synth-corpus exited " + std::to_string(synth.exit_code));
        return;
    }
    const audio::DatasetManifest manifest = audio::load_manifest(ws.manifest.string());
    if (manifest.entries.size() != 96 || manifest.count(audio::Split::Train) != 48 ||
        manifest.count(audio::Split::Test) != 48) {
        report(name, false,
               "expected 96 files split 48/48, got " + std::to_string(manifest.entries.size()) +
                   " split " + std::to_string(manifest.count(audio::Split::Train)) + "/" +
                   std::to_string(manifest.count(audio::Split::Test)));
        return;
    }

    const CliResult prepare = run_cli(cli + " prepare --manifest " + q(ws.manifest) +
                                      " --cache " + q(ws.cache));
    if (prepare.exit_code != 0) {
        report(name, false, "prepare exited " + std::to_string(prepare.exit_code));
        return;
    }
    ws.ready = true;

    const CliResult eval = run_cli(cli + " eval --cache " + q(ws.cache) + " --manifest " +
                                   q(ws.manifest) + " --classifier both");
    if (eval.exit_code != 0) {
        report(name, false, "eval exited " + std::to_string(eval.exit_code));
        return;
    }

    const auto lines = parse_result_lines(eval.output);
    std::size_t anfis_cells = 0;
    std::size_t mlp_cells = 0;
    bool anfis_grand = false;
    bool mlp_grand = false;
    for (const ResultLine& r : lines) {
        const double floor = r.classifier == "anfis" ? 95.0 : 90.0;
        if (r.accuracy < floor) {
            report(name, false, r.classifier + " step=" + r.step + " speaker=" + r.speaker +
                                    " accuracy " + fmt(r.accuracy) + " below " + fmt(floor));
            return;
        }
        if (r.classifier == "anfis") ++anfis_cells;
        if (r.classifier == "mlp") ++mlp_cells;
        if (r.step == "all" && r.speaker == "all") {
            if (r.classifier == "anfis") anfis_grand = true;
            if (r.classifier == "mlp") mlp_grand = true;
        }
    }
    if (anfis_cells < 7 || mlp_cells < 7 || !anfis_grand || !mlp_grand) {
        report(name, false,
               "incomplete report: " + std::to_string(anfis_cells) + " anfis cells, " +
                   std::to_string(mlp_cells) + " mlp cells");
        return;
    }

    const double elapsed = seconds_since(t0);
    report(name, elapsed < 300.0, "took " + fmt(elapsed) + " s, budget 300 s");
}

// Fixed-point front-end against the float baseline on the synthetic corpus:
// per-channel error bounds and test-split label agreement, checked both
// in-process and through the CLI.
void check_precision_bounds(const std::string& cli, const Workspace& ws) {
    const std::string name = "fixed-point precision bounds";
    if (!ws.ready) {
        report(name, false, "corpus unavailable");
        return;
    }

    const harness::RunConfig cfg;
    const audio::DatasetManifest manifest =
        audio::load_manifest(ws.manifest.string(), cfg.vocabulary);
    const harness::PrecisionReport rep = harness::compare_precision(
        manifest, ws.manifest.string(), cfg, harness::FrontendKind::Fixed);

    if (!rep.failures.empty()) {
        report(name, false, std::to_string(rep.failures.size()) + " files failed to compare");
        return;
    }
    if (rep.files_compared != manifest.entries.size() || rep.channels.size() != 13) {
        report(name, false, "compared " + std::to_string(rep.files_compared) + " files, " +
                                std::to_string(rep.channels.size()) + " channels");
        return;
    }
    for (std::size_t k = 1; k < rep.channels.size(); ++k)
        if (rep.channels[k].max_abs > 0.05) {
            report(name, false, "channel " + std::to_string(k) + " max abs error " +
                                    fmt(rep.channels[k].max_abs));
            return;
        }
    if (rep.c0_max_rel > 0.01) {
        report(name, false, "C_0 relative error " + fmt(rep.c0_max_rel));
        return;
    }
    if (rep.agree_total == 0 ||
        static_cast<double>(rep.agree) < 0.95 * static_cast<double>(rep.agree_total)) {
        report(name, false, "label agreement " + std::to_string(rep.agree) + "/" +
                                std::to_string(rep.agree_total));
        return;
    }
    if (!rep.pass) {
        report(name, false, "report did not mark itself as passing");
        return;
    }

    const CliResult cmp = run_cli(cli + " compare-precision --manifest " + q(ws.manifest));
    const bool cli_ok = cmp.exit_code == 0 &&
                        cmp.output.find("PASS (all precision bounds satisfied)") !=
                            std::string::npos;
    report(name, cli_ok, "compare-precision exited " + std::to_string(cmp.exit_code));
}

// Every CLI subcommand run twice with identical arguments produces the same
// bytes, on the terminal and in every file it writes.
void check_determinism(const std::string& cli, const Workspace& ws) {
    const std::string name = "cli determinism";
    const fs::path det = ws.base / "det";
    fs::create_directories(det);
    const fs::path corpus = det / "corpus";
    const fs::path manifest = corpus / "manifest.csv";
    const fs::path cache_float = det / "float.cache";
    const fs::path cache_fixed = det / "fixed.cache";
    const fs::path models = det / "models";
    const fs::path evaldir = det / "eval";
    const fs::path wav = corpus / "wav" / "left_s1_000.wav";

    struct Step {
        std::string label;
        std::string command;
        fs::path dir;  // snapshot root, empty when only stdout matters
    };
    const std::vector<Step> steps = {
        {"synth-corpus",
         cli + " synth-corpus --seed 7 --per-class 6 --out " + q(corpus), corpus},
        {"prepare float",
         cli + " prepare --manifest " + q(manifest) + " --cache " + q(cache_float) + " --seed 5",
         cache_float},
        {"prepare fixed",
         cli + " prepare --manifest " + q(manifest) + " --cache " + q(cache_fixed) +
             " --frontend fixed --seed 5",
         cache_fixed},
        {"train",
         cli + " train --cache " + q(cache_float) + " --manifest " + q(manifest) +
             " --classifier both --out " + q(models) + " --seed 5",
         models},
        {"eval",
         cli + " eval --cache " + q(cache_float) + " --manifest " + q(manifest) +
             " --classifier both --out " + q(evaldir) + " --seed 5",
         evaldir},
        {"recognize anfis",
         cli + " recognize --model " + q(models / "anfis.model") + " " + q(wav), {}},
        {"recognize mlp",
         cli + " recognize --model " + q(models / "mlp.model") + " --frontend fixed " + q(wav),
         {}},
        {"compare-precision",
         cli + " compare-precision --manifest " + q(manifest) + " --seed 5", {}},
    };

    for (const Step& step : steps) {
        const CliResult first = run_cli(step.command);
        if (first.exit_code != 0) {
            report(name, false, step.label + " exited " + std::to_string(first.exit_code));
            return;
        }
        const auto files_first =
            step.dir.empty() ? std::map<std::string, std::string>{} : snapshot_dir(step.dir);

        const CliResult second = run_cli(step.command);
        if (second.exit_code != 0) {
            report(name, false,
                   step.label + " exited " + std::to_string(second.exit_code) + " on rerun");
            return;
        }
        const auto files_second =
            step.dir.empty() ? std::map<std::string, std::string>{} : snapshot_dir(step.dir);

        if (first.output != second.output) {
            report(name, false, step.label + " terminal output differs between runs");
            return;
        }
        if (files_first != files_second) {
            report(name, false, step.label + " written files differ between runs");
            return;
        }
    }
    report(name, true);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-speechcmd-binary>\n";
        return 2;
    }
    const std::string cli = q(fs::path(argv[1]));

    criterion("pipeline routines match naive oracles", [] { check_oracle_equivalence(); });
    criterion("dct analytic identities", [] { check_dct_identities(); });
    criterion("feature compression mean and permutation invariance",
              [] { check_feature_compression(); });
    criterion("analytic gradients match finite differences", [] { check_gradients(); });
    criterion("subtractive clustering picks oracle centers", [] { check_clustering(); });
    criterion("hybrid training rollback and xor benchmark", [] { check_hybrid_training(); });

    Workspace ws;
    ws.base = fs::temp_directory_path() / "speechcmd-acceptance";
    std::error_code ec;
    fs::remove_all(ws.base, ec);
    fs::create_directories(ws.base);

    criterion("two-step synthetic corpus accuracy",
              [&] { check_two_step_accuracy(cli, ws); });
    criterion("fixed-point precision bounds", [&] { check_precision_bounds(cli, ws); });
    criterion("cli determinism", [&] { check_determinism(cli, ws); });

    return g_failed == 0 ? 0 : 1;
}
