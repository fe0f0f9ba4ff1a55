#include "manohog/metrics.h"

#include <algorithm>
#include <cstdio>
#include <string>

#include "manohog/error.h"
#include "manohog/kv_config.h"

namespace manohog {
namespace {

constexpr std::size_t kNameWidth = 12;

double Ratio(std::int64_t num, std::int64_t den, bool& degenerate) {
  if (den == 0) {
    degenerate = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

double F1(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

std::string FitName(const std::string& name) {
  if (name.size() <= kNameWidth) return name;
  return name.substr(0, kNameWidth - 1) + "~";
}

}  // namespace

std::int64_t ConfusionMatrix::Total() const {
  std::int64_t total = 0;
  for (const auto& row : counts) {
    for (std::int64_t v : row) total += v;
  }
  return total;
}

ConfusionMatrix Confusion(std::span<const int> truth, std::span<const int> predicted,
                          const std::vector<int>& classes) {
  if (truth.size() != predicted.size() || truth.empty()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(truth.size()) + " true vs " +
                    std::to_string(predicted.size()) + " predicted labels");
  }
  auto index_of = [&classes](int label) {
    const auto it = std::find(classes.begin(), classes.end(), label);
    if (it == classes.end()) {
      throw Error(ErrorCode::kUnknownClass, "label " + std::to_string(label));
    }
    return static_cast<std::size_t>(it - classes.begin());
  };
  ConfusionMatrix m;
  m.classes = classes;
  m.counts.assign(classes.size(), std::vector<std::int64_t>(classes.size(), 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++m.counts[index_of(truth[i])][index_of(predicted[i])];
  }
  return m;
}

ClassReport Report(const ConfusionMatrix& matrix) {
  const std::size_t k = matrix.classes.size();
  if (k == 0 || matrix.counts.size() != k) {
    throw Error(ErrorCode::kInvalidArgument, "confusion matrix shape does not match classes");
  }
  for (const auto& row : matrix.counts) {
    if (row.size() != k) {
      throw Error(ErrorCode::kInvalidArgument, "confusion matrix is not square");
    }
  }
  ClassReport report;
  report.classes = matrix.classes;
  report.total = matrix.Total();
  if (report.total <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "confusion matrix has no samples");
  }

  std::int64_t trace = 0;
  std::int64_t sum_tp = 0;
  std::int64_t sum_fp = 0;
  std::int64_t sum_fn = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::int64_t row_sum = 0;
    std::int64_t col_sum = 0;
    for (std::size_t j = 0; j < k; ++j) {
      row_sum += matrix.counts[c][j];
      col_sum += matrix.counts[j][c];
    }
    const std::int64_t tp = matrix.counts[c][c];
    trace += tp;
    sum_tp += tp;
    sum_fp += col_sum - tp;
    sum_fn += row_sum - tp;

    ClassMetrics m;
    m.support = row_sum;
    m.precision = Ratio(tp, col_sum, m.degenerate);
    m.recall = Ratio(tp, row_sum, m.degenerate);
    m.f1 = F1(m.precision, m.recall);
    report.per_class.push_back(m);

    report.macro.precision += m.precision / static_cast<double>(k);
    report.macro.recall += m.recall / static_cast<double>(k);
    report.macro.f1 += m.f1 / static_cast<double>(k);
    const double weight = static_cast<double>(row_sum) / static_cast<double>(report.total);
    report.weighted.precision += weight * m.precision;
    report.weighted.recall += weight * m.recall;
    report.weighted.f1 += weight * m.f1;
  }
  report.accuracy = static_cast<double>(trace) / static_cast<double>(report.total);
  bool unused = false;
  report.micro.precision = Ratio(sum_tp, sum_tp + sum_fp, unused);
  report.micro.recall = Ratio(sum_tp, sum_tp + sum_fn, unused);
  report.micro.f1 = F1(report.micro.precision, report.micro.recall);
  return report;
}

std::string RenderReport(const ClassReport& report, const std::vector<std::string>& names) {
  if (names.size() != report.per_class.size()) {
    throw Error(ErrorCode::kNameCountMismatch,
                std::to_string(names.size()) + " names for " +
                    std::to_string(report.per_class.size()) + " classes");
  }
  std::string out;
  char line[128];
  std::snprintf(line, sizeof line, "%-*s  %9s  %6s  %8s  %7s\n",
                static_cast<int>(kNameWidth), "", "precision", "recall", "f1-score",
                "support");
  out += line;
  auto row = [&](const std::string& name, double p, double r, double f,
                 std::int64_t support) {
    std::snprintf(line, sizeof line, "%-*s  %9.2f  %6.2f  %8.2f  %7lld\n",
                  static_cast<int>(kNameWidth), FitName(name).c_str(), p, r, f,
                  static_cast<long long>(support));
    out += line;
  };
  for (std::size_t c = 0; c < names.size(); ++c) {
    const ClassMetrics& m = report.per_class[c];
    row(names[c], m.precision, m.recall, m.f1, m.support);
  }
  row("total", report.weighted.precision, report.weighted.recall, report.weighted.f1,
      report.total);
  return out;
}

std::string FormatReportKeyValues(const ClassReport& report,
                                  const std::vector<std::string>& names) {
  if (names.size() != report.per_class.size()) {
    throw Error(ErrorCode::kNameCountMismatch,
                std::to_string(names.size()) + " names for " +
                    std::to_string(report.per_class.size()) + " classes");
  }
  std::string out;
  auto put = [&out](const std::string& key, const std::string& value) {
    out += key + "=" + value + "\n";
  };
  put("accuracy", FormatDouble(report.accuracy));
  put("total", std::to_string(report.total));
  for (std::size_t c = 0; c < names.size(); ++c) {
    const ClassMetrics& m = report.per_class[c];
    put(names[c] + "_precision", FormatDouble(m.precision));
    put(names[c] + "_recall", FormatDouble(m.recall));
    put(names[c] + "_f1", FormatDouble(m.f1));
    put(names[c] + "_support", std::to_string(m.support));
  }
  put("macro_precision", FormatDouble(report.macro.precision));
  put("macro_recall", FormatDouble(report.macro.recall));
  put("macro_f1", FormatDouble(report.macro.f1));
  put("weighted_precision", FormatDouble(report.weighted.precision));
  put("weighted_recall", FormatDouble(report.weighted.recall));
  put("weighted_f1", FormatDouble(report.weighted.f1));
  return out;
}

}  // namespace manohog
