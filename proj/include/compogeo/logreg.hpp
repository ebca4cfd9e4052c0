#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace compogeo {

// Small built-in classifier for the sarcasm and metaphor feature vectors.
// Export the features as CSV to use an external SVM or random forest instead.

using FeatureMatrix = std::vector<std::vector<double>>;

struct LogRegConfig {
  double learning_rate = 0.1;
  std::size_t epochs = 500;
  double l2 = 1e-4;  // applied to the feature weights, not the intercept
};

class LogRegModel {
 public:
  /// Feature weights followed by the intercept.
  explicit LogRegModel(std::vector<double> weights);

  std::size_t feature_count() const noexcept { return weights_.size() - 1; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  double probability(std::span<const double> features) const;
  /// 1 iff probability >= 0.5.
  int predict(std::span<const double> features) const;

 private:
  std::vector<double> weights_;
};

struct LossGradient {
  double loss = 0.0;
  std::vector<double> gradient;
};

/// Mean logistic loss plus (l2 / 2) * ||w||^2 over the feature weights.
LossGradient logistic_loss(std::span<const double> weights, const FeatureMatrix& x,
                           std::span<const int> y, double l2);

/// Full-batch gradient descent from zero weights. Labels are 0/1 and both
/// classes must be present.
LogRegModel train_logreg(const FeatureMatrix& x, std::span<const int> y,
                         const LogRegConfig& config = {});

}  // namespace compogeo
