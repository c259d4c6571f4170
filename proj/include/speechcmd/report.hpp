#pragma once

#include <map>
#include <string>
#include <vector>

namespace speechcmd::harness {

// Rows are actual labels, columns predicted, both in vocabulary order.
struct ConfusionMatrix {
    std::vector<std::string> vocabulary;
    std::vector<std::size_t> counts;  // vocabulary.size() squared, row-major

    explicit ConfusionMatrix(std::vector<std::string> vocab = {});
    void add(std::size_t actual, std::size_t predicted);
    std::size_t at(std::size_t actual, std::size_t predicted) const;
    std::size_t row_sum(std::size_t actual) const;
    std::size_t trace() const;
    std::size_t total() const;
    double accuracy() const;  // trace / total; 0 when empty
};

struct Prediction {
    std::string source_id;
    std::string speaker_id;
    std::size_t actual = 0;
    std::size_t predicted = 0;
};

struct StepReport {
    ConfusionMatrix overall;
    std::map<std::string, ConfusionMatrix> per_speaker;  // keyed by speaker id
    std::vector<Prediction> predictions;
    std::string model_text;  // serialized training artifact for this step
};

struct EvaluationReport {
    std::vector<std::string> vocabulary;
    std::string classifier_name;
    std::vector<StepReport> steps;  // step 1 trains on train; step 2 swaps
};

// Rebuilds the matrices of a step from its prediction list.
StepReport tally_step(const std::vector<std::string>& vocabulary,
                      const std::vector<Prediction>& predictions);

// Human-readable tables followed by machine-readable `result ...` lines.
std::string render_report(const EvaluationReport& report);

}  // namespace speechcmd::harness
