#include "speechcmd/report.hpp"

#include <algorithm>

#include "speechcmd/errors.hpp"
#include "speechcmd/textio.hpp"

namespace speechcmd::harness {

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> vocab)
    : vocabulary(std::move(vocab)), counts(vocabulary.size() * vocabulary.size(), 0) {}

void ConfusionMatrix::add(std::size_t actual, std::size_t predicted) {
    if (actual >= vocabulary.size() || predicted >= vocabulary.size())
        throw DataError("confusion matrix: label index out of range");
    ++counts[actual * vocabulary.size() + predicted];
}

std::size_t ConfusionMatrix::at(std::size_t actual, std::size_t predicted) const {
    return counts[actual * vocabulary.size() + predicted];
}

std::size_t ConfusionMatrix::row_sum(std::size_t actual) const {
    std::size_t s = 0;
    for (std::size_t p = 0; p < vocabulary.size(); ++p) s += at(actual, p);
    return s;
}

std::size_t ConfusionMatrix::trace() const {
    std::size_t s = 0;
    for (std::size_t i = 0; i < vocabulary.size(); ++i) s += at(i, i);
    return s;
}

std::size_t ConfusionMatrix::total() const {
    std::size_t s = 0;
    for (std::size_t c : counts) s += c;
    return s;
}

double ConfusionMatrix::accuracy() const {
    const std::size_t t = total();
    return t == 0 ? 0.0 : static_cast<double>(trace()) / static_cast<double>(t);
}

StepReport tally_step(const std::vector<std::string>& vocabulary,
                      const std::vector<Prediction>& predictions) {
    StepReport step;
    step.overall = ConfusionMatrix(vocabulary);
    step.predictions = predictions;
    for (const Prediction& p : predictions) {
        step.overall.add(p.actual, p.predicted);
        auto [it, inserted] = step.per_speaker.try_emplace(p.speaker_id, vocabulary);
        it->second.add(p.actual, p.predicted);
    }
    return step;
}

namespace {

std::string pad_left(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string percent(double fraction) { return fmt_fixed(fraction * 100.0, 2); }

void render_matrix(std::string& out, const ConfusionMatrix& m, const std::string& indent) {
    std::size_t width = 5;
    for (const std::string& label : m.vocabulary) width = std::max(width, label.size() + 2);
    out += indent + pad_left("", width);
    for (const std::string& label : m.vocabulary) out += pad_left(label, width);
    out += '\n';
    for (std::size_t a = 0; a < m.vocabulary.size(); ++a) {
        out += indent + pad_left(m.vocabulary[a], width);
        for (std::size_t p = 0; p < m.vocabulary.size(); ++p)
            out += pad_left(std::to_string(m.at(a, p)), width);
        out += '\n';
    }
}

void render_accuracy_line(std::string& out, const std::string& name, const ConfusionMatrix& m,
                          const std::string& indent) {
    out += indent + name + ": " + std::to_string(m.trace()) + "/" + std::to_string(m.total()) +
           " (" + percent(m.accuracy()) + "%)\n";
}

}  // namespace

std::string render_report(const EvaluationReport& report) {
    std::string out = "Two-step evaluation, classifier: " + report.classifier_name + "\n";
    out += "Vocabulary:";
    for (const std::string& label : report.vocabulary) out += " " + label;
    out += "\n";

    for (std::size_t s = 0; s < report.steps.size(); ++s) {
        const StepReport& step = report.steps[s];
        out += "\nStep " + std::to_string(s + 1) +
               (s == 0 ? " (train on train split, test on test split)\n"
                       : " (splits swapped)\n");
        out += "  Confusion matrix (rows actual, columns predicted)\n";
        render_matrix(out, step.overall, "  ");
        out += "  Accuracy by speaker\n";
        for (const auto& [speaker, matrix] : step.per_speaker)
            render_accuracy_line(out, speaker, matrix, "    ");
        render_accuracy_line(out, "all", step.overall, "    ");
    }

    std::size_t grand_correct = 0, grand_total = 0;
    for (const StepReport& step : report.steps) {
        grand_correct += step.overall.trace();
        grand_total += step.overall.total();
    }
    const double grand_acc =
        grand_total == 0 ? 0.0 : static_cast<double>(grand_correct) / static_cast<double>(grand_total);
    out += "\nOverall: " + std::to_string(grand_correct) + "/" + std::to_string(grand_total) +
           " (" + percent(grand_acc) + "%)\n";

    for (std::size_t s = 0; s < report.steps.size(); ++s) {
        const StepReport& step = report.steps[s];
        for (const auto& [speaker, matrix] : step.per_speaker)
            out += "result classifier=" + report.classifier_name + " step=" +
                   std::to_string(s + 1) + " speaker=" + speaker + " correct=" +
                   std::to_string(matrix.trace()) + " total=" + std::to_string(matrix.total()) +
                   " accuracy=" + percent(matrix.accuracy()) + "\n";
        out += "result classifier=" + report.classifier_name + " step=" + std::to_string(s + 1) +
               " speaker=all correct=" + std::to_string(step.overall.trace()) +
               " total=" + std::to_string(step.overall.total()) +
               " accuracy=" + percent(step.overall.accuracy()) + "\n";
    }
    out += "result classifier=" + report.classifier_name + " step=all speaker=all correct=" +
           std::to_string(grand_correct) + " total=" + std::to_string(grand_total) +
           " accuracy=" + percent(grand_acc) + "\n";
    return out;
}

}  // namespace speechcmd::harness
