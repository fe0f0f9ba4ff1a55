#ifndef MANOHOG_METRICS_H_
#define MANOHOG_METRICS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace manohog {

struct ConfusionMatrix {
  std::vector<int> classes;
  // counts[i][j]: samples of true class classes[i] predicted as classes[j].
  std::vector<std::vector<std::int64_t>> counts;

  std::int64_t Total() const;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::int64_t support = 0;
  // Set when precision or recall had a zero denominator (reported as 0).
  bool degenerate = false;
};

struct AggregateMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct ClassReport {
  std::vector<int> classes;
  std::vector<ClassMetrics> per_class;
  double accuracy = 0.0;
  AggregateMetrics macro;
  AggregateMetrics weighted;
  AggregateMetrics micro;
  std::int64_t total = 0;
};

// Errors: LengthMismatch (unequal or empty sequences); UnknownClass.
ConfusionMatrix Confusion(std::span<const int> truth, std::span<const int> predicted,
                          const std::vector<int>& classes);

// Per class k: TP = counts[k][k], FP = column sum - TP, FN = row sum - TP;
// precision = TP/(TP+FP), recall = TP/(TP+FN), f1 = 2PR/(P+R); 0/0 is taken
// as 0. accuracy = trace/total. Macro is the unweighted class mean, weighted
// is support-weighted. Errors: InvalidArgument when the matrix is empty.
ClassReport Report(const ConfusionMatrix& matrix);

// Fixed-width table in the column order precision, recall, f1-score,
// support, two decimals, one row per class plus a `total` row carrying the
// weighted averages and the total support. Names wider than the name column
// are cut and end in '~'. Errors: NameCountMismatch.
std::string RenderReport(const ClassReport& report, const std::vector<std::string>& names);

// `key=value` lines: accuracy, total, <name>_precision, <name>_recall,
// <name>_f1, <name>_support per class, then macro_* and weighted_*.
std::string FormatReportKeyValues(const ClassReport& report,
                                  const std::vector<std::string>& names);

}  // namespace manohog

#endif  // MANOHOG_METRICS_H_
