#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "compogeo/dataset.hpp"
#include "compogeo/embeddings.hpp"
#include "compogeo/preprocess.hpp"
#include "compogeo/scoring.hpp"

namespace compogeo {

/// Borrowed stores. `store` serves single-sense scoring; `senses` serves
/// multi-sense scoring, where contexts come from its global vectors.
struct Resources {
  const EmbeddingStore* store = nullptr;
  const MultiSenseStore* senses = nullptr;
  const StopwordPolicy* stopwords = nullptr;

  const EmbeddingStore& context_store(SenseMode mode) const;
};

struct Hyperparams {
  double variance_ratio = 0.6;
  double threshold = 0.5;
};

struct Grid {
  std::vector<double> variance_ratios;
  std::vector<double> thresholds;

  /// Variance ratios 0.1, 0.2, ..., 1.0 and thresholds 0.00, 0.01, ..., 1.00.
  static Grid default_grid();
  void validate() const;
};

/// Compositional iff score >= threshold.
inline Label threshold_label(double score, double threshold) {
  return score >= threshold ? Label::compositional : Label::non_compositional;
}

/// Scores `words` against the content words of `tokens` outside `masked`.
ScoreReport score_words(std::span<const std::string> tokens, TokenSpan masked,
                        std::span<const std::string> words, const Resources& res,
                        const ReprConfig& config);

ScoreReport score_phrase(const Instance& inst, const Resources& res, const ReprConfig& config);

Label classify_phrase(const Instance& inst, const Resources& res, const ReprConfig& config,
                      const Hyperparams& hp);

struct TuneResult {
  Hyperparams hp;
  double accuracy = 0.0;
};

/// `scores[r][i]` is the score of instance i at grid.variance_ratios[r].
/// Picks the grid point with the highest accuracy over `subset`; ties go to
/// the smaller variance ratio, then the smaller threshold.
TuneResult tune_on_scores(const std::vector<std::vector<double>>& scores, std::span<const Label> gold,
                          std::span<const std::size_t> subset, const Grid& grid);

TuneResult tune_hyperparams(std::span<const Instance> train, const Resources& res,
                            const ReprConfig& config, const Grid& grid);

/// Score of one phrase component against the sentence with the whole
/// phrase masked. Low scores mean idiomatic.
ScoreReport lexical_idiomaticity_score(const Instance& inst, std::size_t component,
                                       const Resources& res, const ReprConfig& config);

/// The k smallest scores ascending, padded with 1.0.
std::vector<double> smallest_k(std::vector<double> scores, std::size_t k);

struct SarcasmOptions {
  std::size_t k = 4;
  // A token is a candidate when its tag starts with one of these.
  std::vector<std::string> pos_classes{"JJ", "RB", "VB"};
};

/// Per-candidate scores for the instance's POS-selected content words.
std::vector<double> sarcasm_candidate_scores(const Instance& inst, const Resources& res,
                                             const ReprConfig& config, const SarcasmOptions& options);

std::vector<double> sarcasm_features(const Instance& inst, const Resources& res,
                                     const ReprConfig& config, const SarcasmOptions& options);

/// Scores below this are raised to it before any ratio is taken.
inline constexpr double kRatioFloor = 1e-9;

/// [lowest, verb, lowest/highest, min(v/s, s/v, v/o, o/v)].
std::array<double, 4> svo_features(double subj, double verb, double obj);
/// [lowest, highest, lowest/highest].
std::array<double, 3> an_features(double adj, double noun);

enum class Structure { svo, an };

struct MetaphorFeatures {
  Structure structure = Structure::svo;
  std::vector<double> values;
  std::vector<double> role_scores;  // subj, verb, obj or adj, noun
  bool short_sentence = false;      // fewer than kShortSentence content words
};

inline constexpr std::size_t kShortSentence = 7;

MetaphorFeatures metaphor_features_svo(const Instance& inst, const Resources& res,
                                       const ReprConfig& config);
MetaphorFeatures metaphor_features_an(const Instance& inst, const Resources& res,
                                      const ReprConfig& config);
/// SVO when a "verb" role is present, AN otherwise.
MetaphorFeatures metaphor_features(const Instance& inst, const Resources& res,
                                   const ReprConfig& config);

}  // namespace compogeo
