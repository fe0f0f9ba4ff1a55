#ifndef MANOHOG_SVM_H_
#define MANOHOG_SVM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "manohog/hog.h"

namespace manohog {

struct TrainConfig {
  double c = 0.025;      // penalty on the summed hinge loss
  double tol = 1e-4;     // relative duality-gap tolerance
  int max_iter = 10000;  // epochs; one epoch is n pair updates
  std::uint64_t seed = 0;

  // Throws InvalidArgument unless c > 0, tol > 0, max_iter >= 1.
  void Validate() const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

// Dense row-major n x d matrix.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  // Throws DimensionMismatch for ragged input.
  static FeatureMatrix FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<const double> Row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }
  std::span<double> Row(std::size_t r) {
    return std::span<double>(data_).subspan(r * cols_, cols_);
  }
  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void AppendRow(std::span<const double> row);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct BinaryFit {
  std::vector<double> weights;
  double bias = 0.0;
  double objective = 0.0;       // primal objective at (weights, bias)
  double dual_objective = 0.0;  // lower bound certifying `objective`
  double duality_gap = 0.0;
  int epochs = 0;
  bool converged = false;  // false: max_iter reached, best iterate returned
  // Primal objective of the incumbent (best iterate so far) after each epoch.
  std::vector<double> objective_trace;
};

// (1/2)|w|^2 + C * sum_i max(0, 1 - y_i (w.x_i + b)) with b unpenalized.
double PrimalObjective(const FeatureMatrix& features, std::span<const int> labels,
                       std::span<const double> weights, double bias, double c);

// Minimizes the primal hinge term over b for fixed margins f_i = w.x_i. The
// minimizers form the interval between the n_pos-th and (n_pos+1)-th smallest
// breakpoints; its midpoint is returned.
double OptimalBias(std::span<const double> scores, std::span<const int> labels);

// Soft-margin linear SVM. Solves the dual
//   max sum(a) - 1/2 a'Qa,  0 <= a_i <= C,  sum(y_i a_i) = 0
// by pair updates with second-order working-set selection, using a cached Gram
// matrix. After every epoch the primal is evaluated at w(a) with the exact
// optimal intercept; the solve stops once the duality gap is at most
// tol * (1 + |primal|). The pair selection is deterministic, so the seed does
// not influence the result.
//
// labels are +1/-1. Errors: SingleClassInput; NonFiniteFeature;
// DimensionMismatch; InvalidArgument (n < 2, labels other than +-1).
BinaryFit TrainBinary(const FeatureMatrix& features, std::span<const int> labels,
                      const TrainConfig& config);

struct LinearSvmModel {
  std::vector<int> classes;  // ascending class ids
  std::vector<std::vector<double>> weights;
  std::vector<double> biases;
  HogConfig hog_config;
  TrainConfig train_config;
  std::uint16_t flags = 0;

  static constexpr std::uint16_t kFlagFeatureExtraction = 1u << 0;
  static constexpr std::uint16_t kFlagNotConverged = 1u << 1;

  std::size_t dimension() const { return weights.empty() ? 0 : weights.front().size(); }
  std::uint64_t hog_config_digest() const { return hog_config.Digest(); }

  friend bool operator==(const LinearSvmModel&, const LinearSvmModel&) = default;
};

// One-vs-rest: one TrainBinary per distinct class (ascending id), that class
// +1 and the rest -1. Sub-problems share one Gram matrix and run on up to
// `jobs` threads; the result does not depend on `jobs`.
// Errors: SingleClassInput when fewer than two classes are present, plus
// everything TrainBinary raises.
LinearSvmModel TrainMulticlass(const FeatureMatrix& features, std::span<const int> labels,
                               const TrainConfig& config, const HogConfig& hog_config,
                               int jobs = 1, std::vector<BinaryFit>* fits = nullptr);

// score_k = w_k . x + b_k. Errors: DimensionMismatch.
std::vector<double> Decision(const LinearSvmModel& model, std::span<const double> x);

// Class id of the largest score, ties to the lowest class id.
int Predict(const LinearSvmModel& model, std::span<const double> x);

struct GridSearchResult {
  std::vector<double> c_values;    // ascending
  std::vector<double> accuracies;  // validation accuracy per C
  double best_c = 0.0;
  double best_accuracy = 0.0;
};

// Trains one model per C and scores it on the validation set; the best
// validation accuracy wins, ties going to the smaller C.
GridSearchResult GridSearchC(const FeatureMatrix& train, std::span<const int> train_labels,
                             const FeatureMatrix& validation,
                             std::span<const int> validation_labels,
                             std::vector<double> c_grid, const TrainConfig& config,
                             const HogConfig& hog_config, int jobs = 1);

}  // namespace manohog

#endif  // MANOHOG_SVM_H_
