#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "compogeo/baselines.hpp"
#include "compogeo/dataset.hpp"
#include "compogeo/eval.hpp"
#include "compogeo/logreg.hpp"
#include "compogeo/tasks.hpp"

namespace compogeo {

enum class Task { classify_mwe, idiomaticity, sarcasm, metaphor };
enum class Method { subspace, pmi };

struct EvaluationOptions {
  Task task = Task::classify_mwe;
  Method method = Method::subspace;  // pmi applies to classify_mwe and idiomaticity
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  Grid grid = Grid::default_grid();
  std::size_t component = 0;  // idiomaticity only
  SarcasmOptions sarcasm;
  LogRegConfig logreg;
  Label positive = Label::non_compositional;
  const CountTable* counts = nullptr;
};

struct FoldReport {
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  Hyperparams hp;               // threshold tasks; pmi folds fill only the threshold
  double train_accuracy = 0.0;  // threshold tasks
  std::vector<double> weights;  // feature tasks; empty when the fold fell back to a constant
};

struct EvaluationResult {
  Metrics metrics;
  /// One entry per input instance, absent for skipped instances.
  std::vector<std::optional<Label>> predictions;
  std::vector<FoldReport> folds;
  std::size_t evaluated = 0;
  std::vector<std::size_t> skipped;  // input indices without gold or not scorable
};

/// k-fold cross-validation with metrics pooled over all test predictions.
/// Threshold tasks tune (variance ratio, threshold) on each training split;
/// feature tasks train the logistic-regression classifier on it. A training
/// split holding a single class predicts that class.
EvaluationResult cross_validate(std::span<const Instance> instances, const Resources& res,
                                const ReprConfig& config, const EvaluationOptions& options);

}  // namespace compogeo
