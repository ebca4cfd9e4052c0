#include "compogeo/logreg.hpp"

#include <algorithm>
#include <cmath>

#include "compogeo/error.hpp"

namespace compogeo {

namespace {

double linear(std::span<const double> w, std::span<const double> x) {
  double z = w.back();
  for (std::size_t j = 0; j < x.size(); ++j) z += w[j] * x[j];
  return z;
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

void check_shape(std::span<const double> w, const FeatureMatrix& x, std::span<const int> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::dimension_mismatch, "feature rows and labels differ in count");
  for (const auto& row : x) {
    if (row.size() + 1 != w.size()) {
      throw Error(ErrorCode::dimension_mismatch, "feature row length does not match the weights");
    }
  }
  for (int label : y) {
    if (label != 0 && label != 1) throw Error(ErrorCode::invalid_argument, "labels must be 0 or 1");
  }
}

}  // namespace

LogRegModel::LogRegModel(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorCode::invalid_argument, "model needs at least an intercept");
}

double LogRegModel::probability(std::span<const double> features) const {
  if (features.size() != feature_count()) {
    throw Error(ErrorCode::dimension_mismatch, "feature vector has wrong length");
  }
  return sigmoid(linear(weights_, features));
}

int LogRegModel::predict(std::span<const double> features) const {
  return probability(features) >= 0.5 ? 1 : 0;
}

LossGradient logistic_loss(std::span<const double> weights, const FeatureMatrix& x,
                           std::span<const int> y, double l2) {
  check_shape(weights, x, y);
  LossGradient out;
  out.gradient.assign(weights.size(), 0.0);
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double z = linear(weights, x[i]);
    // -log p(y|x) = softplus(z) - y z
    out.loss += softplus(z) - y[i] * z;
    double residual = sigmoid(z) - y[i];
    for (std::size_t j = 0; j < x[i].size(); ++j) out.gradient[j] += residual * x[i][j];
    out.gradient.back() += residual;
  }
  if (n > 0) {
    out.loss /= n;
    for (auto& g : out.gradient) g /= n;
  }
  for (std::size_t j = 0; j + 1 < weights.size(); ++j) {
    out.loss += 0.5 * l2 * weights[j] * weights[j];
    out.gradient[j] += l2 * weights[j];
  }
  return out;
}

LogRegModel train_logreg(const FeatureMatrix& x, std::span<const int> y, const LogRegConfig& config) {
  if (x.empty()) throw Error(ErrorCode::degenerate_training, "no training rows");
  bool has0 = std::find(y.begin(), y.end(), 0) != y.end();
  bool has1 = std::find(y.begin(), y.end(), 1) != y.end();
  if (!has0 || !has1) throw Error(ErrorCode::degenerate_training, "training labels contain a single class");
  std::vector<double> w(x.front().size() + 1, 0.0);
  check_shape(w, x, y);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    auto lg = logistic_loss(w, x, y, config.l2);
    for (std::size_t j = 0; j < w.size(); ++j) w[j] -= config.learning_rate * lg.gradient[j];
  }
  return LogRegModel(std::move(w));
}

}  // namespace compogeo
