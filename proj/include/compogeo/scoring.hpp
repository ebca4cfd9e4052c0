#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "compogeo/embeddings.hpp"
#include "compogeo/geometry.hpp"

namespace compogeo {

enum class PhraseMode { average, pca };
enum class ContextMode { average, pca };
enum class SenseMode { global, multisense };

struct ReprConfig {
  PhraseMode phrase = PhraseMode::pca;
  ContextMode context = ContextMode::pca;
  double variance_ratio = 0.6;
  SenseMode sense = SenseMode::global;

  void validate() const;
};

struct ScoreReport {
  double score = 0.0;
  std::vector<double> per_sense;  // empty unless sense vectors were scored
  std::size_t m_used = 0;
  std::size_t n_context = 0;
};

/// Average mode keeps the sum of the component vectors (cosine makes sum and
/// mean interchangeable). PCA mode keeps the first principal direction of the
/// components, oriented so that it has a nonnegative inner product with the
/// sum.
Vector phrase_vector(std::span<const Vector> components, PhraseMode mode);
Vector phrase_vector(std::span<const std::string> words, const EmbeddingStore& store,
                     PhraseMode mode);

/// Either a principal subspace (pca) or the sum vector (average) of a context.
class ContextRepresentation {
 public:
  static ContextRepresentation build(std::span<const Vector> context, ContextMode mode,
                                     double variance_ratio);

  ContextMode mode() const noexcept { return mode_; }
  std::size_t n_context() const noexcept { return n_context_; }
  std::size_t dim() const noexcept { return sum_.size(); }
  const Subspace& subspace() const;
  const Vector& sum() const noexcept { return sum_; }

 private:
  ContextRepresentation(ContextMode mode, std::optional<Subspace> subspace, Vector sum, std::size_t n)
      : mode_(mode), subspace_(std::move(subspace)), sum_(std::move(sum)), n_context_(n) {}

  ContextMode mode_;
  std::optional<Subspace> subspace_;
  Vector sum_;
  std::size_t n_context_;
};

inline ContextRepresentation context_representation(std::span<const Vector> context,
                                                    ContextMode mode, double variance_ratio) {
  return ContextRepresentation::build(context, mode, variance_ratio);
}

/// max(0, cosine(a, b)): the average-context score shared with the baselines.
double clamped_cosine(std::span<const double> a, std::span<const double> b);

ScoreReport compositionality_score(std::span<const double> phrase_v,
                                   const ContextRepresentation& context);

/// Scores every combination of component senses (Cartesian product, first
/// component varying slowest) and reports the maximum.
ScoreReport multisense_score(std::span<const std::string> words, const MultiSenseStore& store,
                             PhraseMode mode, const ContextRepresentation& context);

inline ScoreReport multisense_score(const std::string& word, const MultiSenseStore& store,
                                    const ContextRepresentation& context) {
  return multisense_score(std::span<const std::string>(&word, 1), store, PhraseMode::average,
                          context);
}

}  // namespace compogeo
