#include "manohog/svm.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <thread>

#include "manohog/error.h"

namespace manohog {
namespace {

// Curvature floor for degenerate pairs (identical points).
constexpr double kTau = 1e-12;
// A pair violating the KKT conditions by less than this is not worth updating.
constexpr double kKktEpsilon = 1e-12;

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Symmetric n x n matrix of inner products, rows filled in parallel.
class GramMatrix {
 public:
  GramMatrix(const FeatureMatrix& x, int jobs) : n_(x.rows()), k_(n_ * n_) {
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n_)));
    auto fill = [&](int worker) {
      for (std::size_t i = worker; i < n_; i += workers) {
        for (std::size_t j = 0; j <= i; ++j) {
          const double v = Dot(x.Row(i), x.Row(j));
          k_[i * n_ + j] = v;
          k_[j * n_ + i] = v;
        }
      }
    };
    if (workers == 1) {
      fill(0);
    } else {
      std::vector<std::thread> threads;
      for (int w = 0; w < workers; ++w) threads.emplace_back(fill, w);
      for (auto& t : threads) t.join();
    }
  }

  std::size_t size() const { return n_; }
  std::span<const double> Row(std::size_t i) const {
    return std::span<const double>(k_).subspan(i * n_, n_);
  }
  double at(std::size_t i, std::size_t j) const { return k_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> k_;
};

void CheckFinite(const FeatureMatrix& x) {
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (double v : x.Row(r)) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNonFiniteFeature, "row " + std::to_string(r));
      }
    }
  }
}

void CheckBinaryLabels(const FeatureMatrix& x, std::span<const int> y) {
  if (y.size() != x.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(y.size()) + " labels for " + std::to_string(x.rows()) +
                    " rows");
  }
  if (x.rows() < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two samples");
  if (x.cols() == 0) throw Error(ErrorCode::kInvalidArgument, "features have no columns");
  bool pos = false;
  bool neg = false;
  for (int label : y) {
    if (label == 1) pos = true;
    else if (label == -1) neg = true;
    else throw Error(ErrorCode::kInvalidArgument, "binary labels must be +1 or -1");
  }
  if (!pos || !neg) {
    throw Error(ErrorCode::kSingleClassInput, "binary problem has only one label");
  }
}

struct PrimalDual {
  double primal;
  double dual;
  double bias;
};

// Evaluates the primal at w(alpha) with its optimal intercept, and the dual,
// from the gradient G = Q alpha - 1 (so w.x_i = y_i (G_i + 1)).
PrimalDual Evaluate(std::span<const double> alpha, std::span<const double> grad,
                    std::span<const int> y, double c, std::vector<double>& scores) {
  double w_norm_sq = 0.0;
  double alpha_sum = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    scores[i] = y[i] * (grad[i] + 1.0);
    w_norm_sq += alpha[i] * (grad[i] + 1.0);
    alpha_sum += alpha[i];
  }
  w_norm_sq = std::max(w_norm_sq, 0.0);
  const double bias = OptimalBias(scores, y);
  double hinge = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    hinge += std::max(0.0, 1.0 - y[i] * (scores[i] + bias));
  }
  return {0.5 * w_norm_sq + c * hinge, alpha_sum - 0.5 * w_norm_sq, bias};
}

BinaryFit SolveDual(const FeatureMatrix& x, const GramMatrix& gram,
                    std::span<const int> y, const TrainConfig& config) {
  const std::size_t n = x.rows();
  const double c = config.c;
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);
  std::vector<double> scores(n, 0.0);

  auto in_up = [&](std::size_t t) {
    return y[t] == 1 ? alpha[t] < c : alpha[t] > 0.0;
  };
  auto in_low = [&](std::size_t t) {
    return y[t] == 1 ? alpha[t] > 0.0 : alpha[t] < c;
  };

  BinaryFit fit;
  std::vector<double> best_alpha = alpha;
  double best_primal = std::numeric_limits<double>::infinity();
  double best_dual = -std::numeric_limits<double>::infinity();
  double best_bias = 0.0;
  double last_gap = std::numeric_limits<double>::infinity();

  for (int epoch = 1; epoch <= config.max_iter; ++epoch) {
    bool optimal = false;
    for (std::size_t step = 0; step < n; ++step) {
      // i maximizes -y_t G_t over the "up" set.
      std::size_t i = n;
      double g_max = -std::numeric_limits<double>::infinity();
      for (std::size_t t = 0; t < n; ++t) {
        if (in_up(t) && -y[t] * grad[t] > g_max) {
          g_max = -y[t] * grad[t];
          i = t;
        }
      }
      // j minimizes the second-order gain estimate over the "low" set.
      std::size_t j = n;
      double g_max2 = -std::numeric_limits<double>::infinity();
      double best_gain = std::numeric_limits<double>::infinity();
      if (i < n) {
        const auto k_i = gram.Row(i);
        for (std::size_t t = 0; t < n; ++t) {
          if (!in_low(t)) continue;
          g_max2 = std::max(g_max2, y[t] * grad[t]);
          const double b = g_max + y[t] * grad[t];
          if (b <= 0.0) continue;
          double a = k_i[i] + gram.at(t, t) - 2.0 * k_i[t];
          if (a <= 0.0) a = kTau;
          const double gain = -(b * b) / a;
          if (gain < best_gain) {
            best_gain = gain;
            j = t;
          }
        }
      }
      if (i == n || j == n || g_max + g_max2 < kKktEpsilon) {
        optimal = true;
        break;
      }

      const auto k_i = gram.Row(i);
      const auto k_j = gram.Row(j);
      const double old_ai = alpha[i];
      const double old_aj = alpha[j];
      const double q_ij = y[i] * y[j] * k_i[j];
      if (y[i] != y[j]) {
        double quad = k_i[i] + k_j[j] + 2.0 * q_ij;
        if (quad <= 0.0) quad = kTau;
        const double delta = (-grad[i] - grad[j]) / quad;
        const double diff = alpha[i] - alpha[j];
        alpha[i] += delta;
        alpha[j] += delta;
        if (diff > 0.0) {
          if (alpha[j] < 0.0) { alpha[j] = 0.0; alpha[i] = diff; }
        } else {
          if (alpha[i] < 0.0) { alpha[i] = 0.0; alpha[j] = -diff; }
        }
        if (diff > 0.0) {
          if (alpha[i] > c) { alpha[i] = c; alpha[j] = c - diff; }
        } else {
          if (alpha[j] > c) { alpha[j] = c; alpha[i] = c + diff; }
        }
      } else {
        double quad = k_i[i] + k_j[j] - 2.0 * q_ij;
        if (quad <= 0.0) quad = kTau;
        const double delta = (grad[i] - grad[j]) / quad;
        const double sum = alpha[i] + alpha[j];
        alpha[i] -= delta;
        alpha[j] += delta;
        if (sum > c) {
          if (alpha[i] > c) { alpha[i] = c; alpha[j] = sum - c; }
        } else {
          if (alpha[j] < 0.0) { alpha[j] = 0.0; alpha[i] = sum; }
        }
        if (sum > c) {
          if (alpha[j] > c) { alpha[j] = c; alpha[i] = sum - c; }
        } else {
          if (alpha[i] < 0.0) { alpha[i] = 0.0; alpha[j] = sum; }
        }
      }

      const double d_i = (alpha[i] - old_ai) * y[i];
      const double d_j = (alpha[j] - old_aj) * y[j];
      for (std::size_t t = 0; t < n; ++t) {
        grad[t] += y[t] * (k_i[t] * d_i + k_j[t] * d_j);
      }
    }

    // Refresh the gradient from alpha to stop drift from accumulating.
    for (std::size_t t = 0; t < n; ++t) {
      const auto k_t = gram.Row(t);
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (alpha[k] != 0.0) s += alpha[k] * y[k] * k_t[k];
      }
      grad[t] = y[t] * s - 1.0;
    }

    const PrimalDual pd = Evaluate(alpha, grad, y, c, scores);
    if (pd.primal < best_primal) {
      best_primal = pd.primal;
      best_bias = pd.bias;
      best_alpha = alpha;
    }
    best_dual = std::max(best_dual, pd.dual);
    fit.objective_trace.push_back(best_primal);
    fit.epochs = epoch;
    last_gap = best_primal - best_dual;
    if (last_gap <= config.tol * (1.0 + std::abs(best_primal)) || optimal) {
      fit.converged = true;
      break;
    }
  }

  fit.weights.assign(x.cols(), 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (best_alpha[k] == 0.0) continue;
    const double coef = best_alpha[k] * y[k];
    const auto row = x.Row(k);
    for (std::size_t d = 0; d < x.cols(); ++d) fit.weights[d] += coef * row[d];
  }
  fit.bias = best_bias;
  fit.objective = best_primal;
  fit.dual_objective = best_dual;
  fit.duality_gap = last_gap;
  return fit;
}

}  // namespace

void TrainConfig::Validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::kInvalidArgument, "TrainConfig: c must be positive");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorCode::kInvalidArgument, "TrainConfig: tol must be positive");
  }
  if (max_iter < 1) {
    throw Error(ErrorCode::kInvalidArgument, "TrainConfig: max_iter must be >= 1");
  }
}

FeatureMatrix FeatureMatrix::FromRows(const std::vector<std::vector<double>>& rows) {
  FeatureMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged feature rows");
    }
    std::copy(rows[r].begin(), rows[r].end(), m.Row(r).begin());
  }
  return m;
}

void FeatureMatrix::AppendRow(std::span<const double> row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "row of length " + std::to_string(row.size()) + ", expected " +
                    std::to_string(cols_));
  }
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

double PrimalObjective(const FeatureMatrix& features, std::span<const int> labels,
                       std::span<const double> weights, double bias, double c) {
  double hinge = 0.0;
  for (std::size_t i = 0; i < features.rows(); ++i) {
    hinge += std::max(0.0, 1.0 - labels[i] * (Dot(weights, features.Row(i)) + bias));
  }
  return 0.5 * Dot(weights, weights) + c * hinge;
}

double OptimalBias(std::span<const double> scores, std::span<const int> labels) {
  std::vector<double> breakpoints;
  breakpoints.reserve(scores.size());
  std::size_t positives = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] == 1) {
      breakpoints.push_back(1.0 - scores[i]);
      ++positives;
    } else {
      breakpoints.push_back(-1.0 - scores[i]);
    }
  }
  if (positives == 0 || positives == scores.size()) {
    throw Error(ErrorCode::kSingleClassInput, "intercept needs both labels");
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  return 0.5 * (breakpoints[positives - 1] + breakpoints[positives]);
}

BinaryFit TrainBinary(const FeatureMatrix& features, std::span<const int> labels,
                      const TrainConfig& config) {
  config.Validate();
  CheckBinaryLabels(features, labels);
  CheckFinite(features);
  const GramMatrix gram(features, 1);
  return SolveDual(features, gram, labels, config);
}

LinearSvmModel TrainMulticlass(const FeatureMatrix& features, std::span<const int> labels,
                               const TrainConfig& config, const HogConfig& hog_config,
                               int jobs, std::vector<BinaryFit>* fits) {
  config.Validate();
  if (labels.size() != features.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(labels.size()) + " labels for " +
                    std::to_string(features.rows()) + " rows");
  }
  const std::set<int> distinct(labels.begin(), labels.end());
  if (distinct.size() < 2) {
    throw Error(ErrorCode::kSingleClassInput,
                "training data contains " + std::to_string(distinct.size()) + " class(es)");
  }
  if (features.cols() == 0) throw Error(ErrorCode::kInvalidArgument, "features have no columns");
  CheckFinite(features);

  LinearSvmModel model;
  model.classes.assign(distinct.begin(), distinct.end());
  model.hog_config = hog_config;
  model.train_config = config;

  const GramMatrix gram(features, jobs);
  std::vector<BinaryFit> results(model.classes.size());
  auto solve = [&](std::size_t k) {
    std::vector<int> y(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      y[i] = labels[i] == model.classes[k] ? 1 : -1;
    }
    results[k] = SolveDual(features, gram, y, config);
  };
  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1,
                              model.classes.size());
  if (workers == 1) {
    for (std::size_t k = 0; k < results.size(); ++k) solve(k);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        for (std::size_t k = w; k < results.size(); k += workers) solve(k);
      });
    }
    for (auto& t : threads) t.join();
  }

  for (BinaryFit& fit : results) {
    if (!fit.converged) model.flags |= LinearSvmModel::kFlagNotConverged;
    model.weights.push_back(fit.weights);
    model.biases.push_back(fit.bias);
  }
  if (fits != nullptr) *fits = std::move(results);
  return model;
}

std::vector<double> Decision(const LinearSvmModel& model, std::span<const double> x) {
  if (x.size() != model.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "feature length " + std::to_string(x.size()) + ", model expects " +
                    std::to_string(model.dimension()));
  }
  std::vector<double> scores(model.classes.size());
  for (std::size_t k = 0; k < scores.size(); ++k) {
    scores[k] = Dot(model.weights[k], x) + model.biases[k];
  }
  return scores;
}

int Predict(const LinearSvmModel& model, std::span<const double> x) {
  const std::vector<double> scores = Decision(model, x);
  std::size_t best = 0;
  for (std::size_t k = 1; k < scores.size(); ++k) {
    if (scores[k] > scores[best]) best = k;
  }
  return model.classes[best];
}

GridSearchResult GridSearchC(const FeatureMatrix& train, std::span<const int> train_labels,
                             const FeatureMatrix& validation,
                             std::span<const int> validation_labels,
                             std::vector<double> c_grid, const TrainConfig& config,
                             const HogConfig& hog_config, int jobs) {
  if (c_grid.empty()) throw Error(ErrorCode::kInvalidArgument, "empty C grid");
  if (validation.rows() == 0 || validation_labels.size() != validation.rows()) {
    throw Error(ErrorCode::kEmptyDataset, "validation set is empty or mislabeled");
  }
  std::sort(c_grid.begin(), c_grid.end());
  c_grid.erase(std::unique(c_grid.begin(), c_grid.end()), c_grid.end());

  GridSearchResult result;
  result.best_accuracy = -1.0;
  for (double c : c_grid) {
    TrainConfig trial = config;
    trial.c = c;
    const LinearSvmModel model = TrainMulticlass(train, train_labels, trial, hog_config, jobs);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < validation.rows(); ++i) {
      if (Predict(model, validation.Row(i)) == validation_labels[i]) ++correct;
    }
    const double accuracy = static_cast<double>(correct) / validation.rows();
    result.c_values.push_back(c);
    result.accuracies.push_back(accuracy);
    if (accuracy > result.best_accuracy) {
      result.best_accuracy = accuracy;
      result.best_c = c;
    }
  }
  return result;
}

}  // namespace manohog
