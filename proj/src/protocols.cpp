#include "compogeo/protocols.hpp"

#include <algorithm>
#include <cmath>

#include "compogeo/error.hpp"

namespace compogeo {

namespace {

bool recoverable(const Error& e) {
  switch (e.code()) {
    case ErrorCode::out_of_vocabulary:
    case ErrorCode::empty_context:
    case ErrorCode::degenerate_context:
    case ErrorCode::zero_norm:
    case ErrorCode::zero_count:
    case ErrorCode::missing_role:
      return true;
    default:
      return false;
  }
}

std::optional<Label> gold_for(const Instance& inst, const EvaluationOptions& o) {
  return inst.gold(o.task == Task::idiomaticity ? static_cast<int>(o.component) : -1);
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& fold) {
  std::vector<std::size_t> out;
  out.reserve(n - fold.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (j < fold.size() && fold[j] == i) {
      ++j;
      continue;
    }
    out.push_back(i);
  }
  return out;
}

// PMI threshold with the best training accuracy among midpoints of sorted
// training scores (plus one value below all of them); ties take the smaller.
double tune_pmi_threshold(const std::vector<double>& scores, const std::vector<Label>& gold,
                          const std::vector<std::size_t>& train) {
  std::vector<double> sorted;
  for (std::size_t i : train) sorted.push_back(scores[i]);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<double> candidates{sorted.front() - 1.0};
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) candidates.push_back(0.5 * (sorted[i] + sorted[i + 1]));
  candidates.push_back(sorted.back());

  double best = candidates.front();
  std::size_t best_correct = 0;
  bool have = false;
  for (double t : candidates) {
    std::size_t correct = 0;
    for (std::size_t i : train) {
      if (pmi_classify(scores[i], t) == gold[i]) ++correct;
    }
    if (!have || correct > best_correct) {
      have = true;
      best = t;
      best_correct = correct;
    }
  }
  return best;
}

}  // namespace

EvaluationResult cross_validate(std::span<const Instance> instances, const Resources& res,
                                const ReprConfig& config, const EvaluationOptions& options) {
  config.validate();
  options.grid.validate();
  if (options.method == Method::pmi) {
    if (options.task != Task::classify_mwe && options.task != Task::idiomaticity) {
      throw Error(ErrorCode::invalid_argument, "the PMI baseline applies to phrase tasks only");
    }
    if (!options.counts) throw Error(ErrorCode::invalid_argument, "the PMI baseline needs count tables");
  }

  const bool threshold_task = options.task == Task::classify_mwe || options.task == Task::idiomaticity;
  const bool use_pmi = options.method == Method::pmi;
  const auto& ratios = options.grid.variance_ratios;

  EvaluationResult result;
  result.predictions.assign(instances.size(), std::nullopt);

  // Usable instances, compacted; everything below indexes into these.
  std::vector<std::size_t> origin;
  std::vector<Label> gold;
  std::vector<std::vector<double>> scores(threshold_task && !use_pmi ? ratios.size() : 0);
  std::vector<double> pmi_scores;
  FeatureMatrix features;

  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    const auto& inst = instances[idx];
    auto g = gold_for(inst, options);
    if (!g) {
      result.skipped.push_back(idx);
      continue;
    }
    try {
      if (use_pmi) {
        if (inst.phrase_words.size() != 2) {
          throw Error(ErrorCode::zero_count, "PMI needs a two-word phrase");
        }
        pmi_scores.push_back(pmi(*options.counts, inst.phrase_words[0], inst.phrase_words[1]));
      } else if (threshold_task) {
        std::vector<double> column;
        for (double ratio : ratios) {
          ReprConfig c = config;
          c.variance_ratio = ratio;
          column.push_back(options.task == Task::classify_mwe
                               ? score_phrase(inst, res, c).score
                               : lexical_idiomaticity_score(inst, options.component, res, c).score);
        }
        for (std::size_t r = 0; r < ratios.size(); ++r) scores[r].push_back(column[r]);
      } else if (options.task == Task::sarcasm) {
        features.push_back(sarcasm_features(inst, res, config, options.sarcasm));
      } else {
        features.push_back(metaphor_features(inst, res, config).values);
      }
    } catch (const Error& e) {
      if (!recoverable(e)) throw;
      result.skipped.push_back(idx);
      continue;
    }
    origin.push_back(idx);
    gold.push_back(*g);
  }

  if (options.task == Task::metaphor && !features.empty()) {
    for (const auto& f : features) {
      if (f.size() != features.front().size()) {
        throw Error(ErrorCode::invalid_argument, "dataset mixes SVO and AN instances");
      }
    }
  }

  const std::size_t n = origin.size();
  auto folds = kfold(n, options.folds, options.seed);
  std::vector<Label> predicted(n, Label::compositional);

  for (const auto& test : folds) {
    auto train = complement(n, test);
    FoldReport report;
    report.train_size = train.size();
    report.test_size = test.size();
    if (use_pmi) {
      double t = tune_pmi_threshold(pmi_scores, gold, train);
      report.hp = {0.0, t};
      for (std::size_t i : test) predicted[i] = pmi_classify(pmi_scores[i], t);
    } else if (threshold_task) {
      auto tuned = tune_on_scores(scores, gold, train, options.grid);
      report.hp = tuned.hp;
      report.train_accuracy = tuned.accuracy;
      std::size_t r = static_cast<std::size_t>(
          std::find(ratios.begin(), ratios.end(), tuned.hp.variance_ratio) - ratios.begin());
      for (std::size_t i : test) predicted[i] = threshold_label(scores[r][i], tuned.hp.threshold);
    } else {
      FeatureMatrix x;
      std::vector<int> y;
      for (std::size_t i : train) {
        x.push_back(features[i]);
        y.push_back(gold[i] == options.positive ? 1 : 0);
      }
      bool single = std::all_of(y.begin(), y.end(), [&](int v) { return v == y.front(); });
      const Label other = options.positive == Label::compositional ? Label::non_compositional
                                                                  : Label::compositional;
      if (single) {
        Label constant = y.front() == 1 ? options.positive : other;
        for (std::size_t i : test) predicted[i] = constant;
      } else {
        auto model = train_logreg(x, y, options.logreg);
        report.weights = model.weights();
        for (std::size_t i : test) predicted[i] = model.predict(features[i]) == 1 ? options.positive : other;
      }
    }
    result.folds.push_back(std::move(report));
  }

  for (std::size_t i = 0; i < n; ++i) result.predictions[origin[i]] = predicted[i];
  result.metrics = compute_metrics(predicted, gold, options.positive);
  result.evaluated = n;
  return result;
}

}  // namespace compogeo
