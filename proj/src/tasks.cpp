#include "compogeo/tasks.hpp"

#include <algorithm>

#include "compogeo/error.hpp"

namespace compogeo {

const EmbeddingStore& Resources::context_store(SenseMode mode) const {
  if (mode == SenseMode::multisense) {
    if (!senses) throw Error(ErrorCode::invalid_argument, "multi-sense scoring needs a multi-sense store");
    return senses->globals();
  }
  if (!store) throw Error(ErrorCode::invalid_argument, "global scoring needs an embedding store");
  return *store;
}

Grid Grid::default_grid() {
  Grid g;
  for (int i = 1; i <= 10; ++i) g.variance_ratios.push_back(i / 10.0);
  for (int i = 0; i <= 100; ++i) g.thresholds.push_back(i / 100.0);
  return g;
}

void Grid::validate() const {
  if (variance_ratios.empty() || thresholds.empty()) {
    throw Error(ErrorCode::invalid_argument, "hyperparameter grid is empty");
  }
  for (double r : variance_ratios) {
    if (!(r > 0.0 && r <= 1.0)) throw Error(ErrorCode::invalid_argument, "grid variance ratio outside (0, 1]");
  }
  for (double t : thresholds) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::invalid_argument, "grid threshold outside [0, 1]");
  }
}

namespace {

void check_phrase_known(std::span<const std::string> words, const Resources& res, SenseMode mode) {
  for (const auto& w : words) {
    bool known = mode == SenseMode::multisense ? res.senses->senses(w) != nullptr : res.store->contains(w);
    if (!known) throw Error(ErrorCode::out_of_vocabulary, "word '" + w + "' is not in the store");
  }
}

const StopwordPolicy& stopwords_of(const Resources& res) {
  if (!res.stopwords) throw Error(ErrorCode::invalid_argument, "no stopword policy configured");
  return *res.stopwords;
}

}  // namespace

ScoreReport score_words(std::span<const std::string> tokens, TokenSpan masked,
                        std::span<const std::string> words, const Resources& res,
                        const ReprConfig& config) {
  config.validate();
  const auto& source = res.context_store(config.sense);
  check_phrase_known(words, res, config.sense);
  auto ctx = extract_context(tokens, masked, stopwords_of(res), source);
  auto rep = ContextRepresentation::build(ctx.vectors, config.context, config.variance_ratio);
  if (config.sense == SenseMode::multisense) {
    return multisense_score(words, *res.senses, config.phrase, rep);
  }
  return compositionality_score(phrase_vector(words, *res.store, config.phrase), rep);
}

ScoreReport score_phrase(const Instance& inst, const Resources& res, const ReprConfig& config) {
  inst.sentence.validate();
  return score_words(inst.sentence.tokens, inst.sentence.target, inst.phrase_words, res, config);
}

Label classify_phrase(const Instance& inst, const Resources& res, const ReprConfig& config,
                      const Hyperparams& hp) {
  ReprConfig c = config;
  c.variance_ratio = hp.variance_ratio;
  return threshold_label(score_phrase(inst, res, c).score, hp.threshold);
}

TuneResult tune_on_scores(const std::vector<std::vector<double>>& scores, std::span<const Label> gold,
                          std::span<const std::size_t> subset, const Grid& grid) {
  grid.validate();
  if (subset.empty()) throw Error(ErrorCode::invalid_argument, "cannot tune on an empty training set");
  if (scores.size() != grid.variance_ratios.size()) {
    throw Error(ErrorCode::invalid_argument, "score table does not match the grid");
  }
  TuneResult best;
  std::size_t best_correct = 0;
  bool have = false;
  for (std::size_t r = 0; r < grid.variance_ratios.size(); ++r) {
    const double ratio = grid.variance_ratios[r];
    for (double threshold : grid.thresholds) {
      std::size_t correct = 0;
      for (std::size_t i : subset) {
        if (threshold_label(scores[r][i], threshold) == gold[i]) ++correct;
      }
      bool better = !have || correct > best_correct ||
                    (correct == best_correct &&
                     (ratio < best.hp.variance_ratio ||
                      (ratio == best.hp.variance_ratio && threshold < best.hp.threshold)));
      if (better) {
        have = true;
        best_correct = correct;
        best.hp = {ratio, threshold};
      }
    }
  }
  best.accuracy = static_cast<double>(best_correct) / static_cast<double>(subset.size());
  return best;
}

TuneResult tune_hyperparams(std::span<const Instance> train, const Resources& res,
                            const ReprConfig& config, const Grid& grid) {
  grid.validate();
  if (train.empty()) throw Error(ErrorCode::invalid_argument, "cannot tune on an empty training set");
  std::vector<Label> gold;
  for (const auto& inst : train) {
    if (!inst.label) throw Error(ErrorCode::invalid_argument, "training instance has no gold label", inst.line);
    gold.push_back(*inst.label);
  }
  std::vector<std::vector<double>> scores;
  for (double ratio : grid.variance_ratios) {
    ReprConfig c = config;
    c.variance_ratio = ratio;
    auto& row = scores.emplace_back();
    for (const auto& inst : train) row.push_back(score_phrase(inst, res, c).score);
  }
  std::vector<std::size_t> all(train.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return tune_on_scores(scores, gold, all, grid);
}

ScoreReport lexical_idiomaticity_score(const Instance& inst, std::size_t component,
                                       const Resources& res, const ReprConfig& config) {
  inst.sentence.validate();
  if (component >= inst.phrase_words.size()) {
    throw Error(ErrorCode::invalid_argument, "phrase has no component " + std::to_string(component),
                inst.line);
  }
  return score_words(inst.sentence.tokens, inst.sentence.target,
                     std::span<const std::string>(&inst.phrase_words[component], 1), res, config);
}

std::vector<double> smallest_k(std::vector<double> scores, std::size_t k) {
  std::sort(scores.begin(), scores.end());
  scores.resize(k, 1.0);
  return scores;
}

std::vector<double> sarcasm_candidate_scores(const Instance& inst, const Resources& res,
                                             const ReprConfig& config, const SarcasmOptions& options) {
  const auto& s = inst.sentence;
  if (s.annotations.size() != s.tokens.size()) {
    throw Error(ErrorCode::invalid_argument, "sarcasm features need one POS tag per token", inst.line);
  }
  const auto& stop = stopwords_of(res);
  std::vector<double> scores;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    const auto& tag = s.annotations[i];
    bool candidate = std::any_of(options.pos_classes.begin(), options.pos_classes.end(),
                                 [&](const std::string& cls) { return tag.starts_with(cls); });
    if (!candidate || stop.contains(s.tokens[i])) continue;
    try {
      scores.push_back(score_words(s.tokens, TokenSpan{i, i + 1},
                                   std::span<const std::string>(&s.tokens[i], 1), res, config)
                           .score);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::out_of_vocabulary && e.code() != ErrorCode::empty_context) throw;
    }
  }
  return scores;
}

std::vector<double> sarcasm_features(const Instance& inst, const Resources& res,
                                     const ReprConfig& config, const SarcasmOptions& options) {
  if (options.k == 0) throw Error(ErrorCode::invalid_argument, "k must be positive");
  return smallest_k(sarcasm_candidate_scores(inst, res, config, options), options.k);
}

std::array<double, 4> svo_features(double subj, double verb, double obj) {
  const double lowest = std::min({subj, verb, obj});
  const double s = std::max(subj, kRatioFloor);
  const double v = std::max(verb, kRatioFloor);
  const double o = std::max(obj, kRatioFloor);
  return {lowest, verb, std::min({s, v, o}) / std::max({s, v, o}),
          std::min({v / s, s / v, v / o, o / v})};
}

std::array<double, 3> an_features(double adj, double noun) {
  const double a = std::max(adj, kRatioFloor);
  const double n = std::max(noun, kRatioFloor);
  return {std::min(adj, noun), std::max(adj, noun), std::min(a, n) / std::max(a, n)};
}

namespace {

std::vector<double> role_scores(const Instance& inst, const Resources& res, const ReprConfig& config,
                                std::initializer_list<const char*> roles) {
  std::vector<double> out;
  for (const char* role : roles) {
    auto it = inst.roles.find(role);
    if (it == inst.roles.end()) {
      throw Error(ErrorCode::missing_role, std::string("instance has no '") + role + "' role", inst.line);
    }
    std::size_t i = it->second;
    const auto& tokens = inst.sentence.tokens;
    if (i >= tokens.size()) throw Error(ErrorCode::invalid_argument, "role index out of range", inst.line);
    try {
      out.push_back(score_words(tokens, TokenSpan{i, i + 1},
                                std::span<const std::string>(&tokens[i], 1), res, config)
                        .score);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(role) + ": " + e.what(), inst.line);
    }
  }
  return out;
}

bool is_short(const Instance& inst, const Resources& res) {
  return count_content_words(inst.sentence.tokens, stopwords_of(res)) < kShortSentence;
}

}  // namespace

MetaphorFeatures metaphor_features_svo(const Instance& inst, const Resources& res,
                                       const ReprConfig& config) {
  MetaphorFeatures f;
  f.structure = Structure::svo;
  f.role_scores = role_scores(inst, res, config, {"subj", "verb", "obj"});
  auto v = svo_features(f.role_scores[0], f.role_scores[1], f.role_scores[2]);
  f.values.assign(v.begin(), v.end());
  f.short_sentence = is_short(inst, res);
  return f;
}

MetaphorFeatures metaphor_features_an(const Instance& inst, const Resources& res,
                                      const ReprConfig& config) {
  MetaphorFeatures f;
  f.structure = Structure::an;
  f.role_scores = role_scores(inst, res, config, {"adj", "noun"});
  auto v = an_features(f.role_scores[0], f.role_scores[1]);
  f.values.assign(v.begin(), v.end());
  f.short_sentence = is_short(inst, res);
  return f;
}

MetaphorFeatures metaphor_features(const Instance& inst, const Resources& res,
                                   const ReprConfig& config) {
  if (inst.roles.count("verb")) return metaphor_features_svo(inst, res, config);
  return metaphor_features_an(inst, res, config);
}

}  // namespace compogeo
