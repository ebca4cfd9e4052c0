#include "compogeo/compogeo.h"

#include <algorithm>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "compogeo/baselines.hpp"
#include "compogeo/dataset.hpp"
#include "compogeo/embeddings.hpp"
#include "compogeo/error.hpp"
#include "compogeo/eval.hpp"
#include "compogeo/geometry.hpp"
#include "compogeo/logreg.hpp"
#include "compogeo/preprocess.hpp"
#include "compogeo/protocols.hpp"
#include "compogeo/scoring.hpp"
#include "compogeo/tasks.hpp"

using namespace compogeo;

struct cg_store {
  EmbeddingStore store;
};
struct cg_multi_store {
  MultiSenseStore store;
};
struct cg_stopwords {
  StopwordPolicy policy;
};
struct cg_instance {
  Instance inst;
};
struct cg_reader {
  DatasetReader reader;
};
struct cg_scorer {
  Resources res;
  ReprConfig config;
};
struct cg_counts {
  CountTable table;
};
struct cg_logreg {
  LogRegModel model;
};
struct cg_evaluation {
  EvaluationResult result;
};

namespace {

thread_local std::string last_error;
thread_local std::size_t last_line = 0;

cg_status fail(cg_status status, std::string message, std::size_t line = 0) {
  // Error::what() carries a "line N: " prefix; callers get the line separately.
  if (line > 0) {
    std::string prefix = "line " + std::to_string(line) + ": ";
    if (message.compare(0, prefix.size(), prefix) == 0) message.erase(0, prefix.size());
  }
  last_error = std::move(message);
  last_line = line;
  return status;
}

cg_status invalid(const char* message) { return fail(CG_ERR_INVALID_ARGUMENT, message); }

template <typename F>
cg_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    last_line = 0;
    return CG_OK;
  } catch (const Error& e) {
    return fail(static_cast<cg_status>(e.code()), e.what(), e.line());
  } catch (const std::bad_alloc&) {
    return fail(CG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CG_ERR_INTERNAL, "unknown error");
  }
}

Label to_label(int v) { return v == CG_LABEL_COMPOSITIONAL ? Label::compositional : Label::non_compositional; }
int from_label(Label l) { return l == Label::compositional ? CG_LABEL_COMPOSITIONAL : CG_LABEL_NON_COMPOSITIONAL; }

CaseFolding folding(int lowercase) { return lowercase ? CaseFolding::lowercase : CaseFolding::preserve; }

void fill_report(const ScoreReport& r, cg_score_report* out, double* per_sense, std::size_t cap) {
  out->score = r.score;
  out->m_used = r.m_used;
  out->n_context = r.n_context;
  out->n_senses = r.per_sense.size();
  if (per_sense) std::copy_n(r.per_sense.begin(), std::min(cap, r.per_sense.size()), per_sense);
}

void fill_metrics(const Metrics& m, cg_metrics* out) {
  out->tp = m.tp;
  out->fp = m.fp;
  out->tn = m.tn;
  out->fn = m.fn;
  out->accuracy = m.accuracy;
  out->precision = m.precision;
  out->recall = m.recall;
  out->f1 = m.f1;
  out->precision_undefined = m.precision_undefined;
  out->recall_undefined = m.recall_undefined;
  out->f1_undefined = m.f1_undefined;
}

Grid to_grid(const cg_grid* g) {
  if (!g) return Grid::default_grid();
  if ((g->n_variance_ratios && !g->variance_ratios) || (g->n_thresholds && !g->thresholds)) {
    throw Error(ErrorCode::invalid_argument, "grid arrays are NULL");
  }
  Grid grid;
  grid.variance_ratios.assign(g->variance_ratios, g->variance_ratios + g->n_variance_ratios);
  grid.thresholds.assign(g->thresholds, g->thresholds + g->n_thresholds);
  grid.validate();
  return grid;
}

std::vector<std::string> split_classes(const char* list) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(list);
  while (std::getline(in, item, ',')) {
    auto t = trim(item);
    if (!t.empty()) out.emplace_back(t);
  }
  if (out.empty()) throw Error(ErrorCode::invalid_argument, "empty POS class list");
  return out;
}

std::vector<Instance> gather(const cg_instance* const* items, std::size_t n) {
  std::vector<Instance> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!items[i]) throw Error(ErrorCode::invalid_argument, "instance array holds NULL");
    out.push_back(items[i]->inst);
  }
  return out;
}

const Grid& default_grid_storage() {
  static const Grid grid = Grid::default_grid();
  return grid;
}

}  // namespace

extern "C" {

const char* cg_version(void) { return "0.1.0"; }
const char* cg_last_error(void) { return last_error.c_str(); }
size_t cg_last_error_line(void) { return last_line; }

const char* cg_status_name(cg_status status) {
  if (status == CG_OK) return "ok";
  if (status == CG_ERR_INTERNAL) return "internal";
  if (status >= CG_ERR_IO && status <= CG_ERR_DEGENERATE_TRAINING) {
    return to_string(static_cast<ErrorCode>(status)).data();
  }
  return "unknown";
}

// ---- embeddings

cg_status cg_store_load(const char* path, int lowercase, cg_store** out, size_t* duplicates) {
  if (!path || !out) return invalid("NULL argument");
  *out = nullptr;
  return guarded([&] {
    auto loaded = load_word2vec_text(path, folding(lowercase));
    if (duplicates) *duplicates = loaded.duplicates;
    *out = new cg_store{std::move(loaded.store)};
  });
}

cg_status cg_store_save(const cg_store* store, const char* path) {
  if (!store || !path) return invalid("NULL argument");
  return guarded([&] { save_word2vec_text(path, store->store); });
}

void cg_store_free(cg_store* store) { delete store; }
size_t cg_store_dim(const cg_store* store) { return store ? store->store.dim() : 0; }
size_t cg_store_size(const cg_store* store) { return store ? store->store.size() : 0; }

int cg_store_lookup(const cg_store* store, const char* word, double* out) {
  if (!store || !word) return 0;
  auto v = store->store.lookup(word);
  if (!v) return 0;
  if (out) std::copy(v->begin(), v->end(), out);
  return 1;
}

cg_status cg_multi_store_load(const char* path, int lowercase, cg_multi_store** out,
                              size_t* duplicates) {
  if (!path || !out) return invalid("NULL argument");
  *out = nullptr;
  return guarded([&] {
    auto loaded = load_multisense_text(path, folding(lowercase));
    if (duplicates) *duplicates = loaded.duplicates;
    *out = new cg_multi_store{std::move(loaded.store)};
  });
}

cg_status cg_multi_store_save(const cg_multi_store* store, const char* path) {
  if (!store || !path) return invalid("NULL argument");
  return guarded([&] { save_multisense_text(path, store->store); });
}

void cg_multi_store_free(cg_multi_store* store) { delete store; }
size_t cg_multi_store_dim(const cg_multi_store* store) { return store ? store->store.dim() : 0; }
size_t cg_multi_store_size(const cg_multi_store* store) { return store ? store->store.size() : 0; }

size_t cg_multi_store_sense_count(const cg_multi_store* store, const char* word) {
  if (!store || !word) return 0;
  auto* s = store->store.senses(word);
  return s ? s->size() : 0;
}

// ---- stopwords

cg_status cg_stopwords_load(const char* path, const char* language, cg_stopwords** out) {
  if (!path || !out) return invalid("NULL argument");
  *out = nullptr;
  return guarded([&] {
    *out = new cg_stopwords{StopwordPolicy::load(path, language ? language : "")};
  });
}

void cg_stopwords_free(cg_stopwords* stop) { delete stop; }
size_t cg_stopwords_size(const cg_stopwords* stop) { return stop ? stop->policy.size() : 0; }

int cg_stopwords_contains(const cg_stopwords* stop, const char* token) {
  return stop && token && stop->policy.contains(token);
}

// ---- datasets

cg_status cg_instance_parse(const char* json_line, size_t line, cg_instance** out) {
  if (!json_line || !out) return invalid("NULL argument");
  *out = nullptr;
  return guarded([&] { *out = new cg_instance{parse_instance(json_line, line)}; });
}

void cg_instance_free(cg_instance* inst) { delete inst; }
size_t cg_instance_line(const cg_instance* inst) { return inst ? inst->inst.line : 0; }
size_t cg_instance_phrase_size(const cg_instance* inst) { return inst ? inst->inst.phrase_words.size() : 0; }

int cg_instance_gold(const cg_instance* inst, int component, int* label) {
  if (!inst) return 0;
  auto g = inst->inst.gold(component);
  if (!g) return 0;
  if (label) *label = from_label(*g);
  return 1;
}

cg_status cg_reader_open(const char* path, cg_reader** out) {
  if (!path || !out) return invalid("NULL argument");
  *out = nullptr;
  return guarded([&] { *out = new cg_reader{DatasetReader(path)}; });
}

cg_status cg_reader_next(cg_reader* reader, cg_instance** out) {
  if (!reader || !out) return invalid("NULL argument");
  *out = nullptr;
  return guarded([&] {
    auto inst = reader->reader.next();
    if (inst) *out = new cg_instance{std::move(*inst)};
  });
}

size_t cg_reader_line(const cg_reader* reader) { return reader ? reader->reader.line() : 0; }
void cg_reader_free(cg_reader* reader) { delete reader; }

// ---- scoring

void cg_repr_config_default(cg_repr_config* config) {
  if (!config) return;
  config->phrase_mode = CG_MODE_PCA;
  config->context_mode = CG_MODE_PCA;
  config->sense_mode = CG_SENSE_GLOBAL;
  config->variance_ratio = 0.6;
}

cg_status cg_scorer_new(const cg_store* store, const cg_multi_store* senses,
                        const cg_stopwords* stop, const cg_repr_config* config, cg_scorer** out) {
  if (!out || !stop) return invalid("NULL argument");
  *out = nullptr;
  cg_repr_config c;
  cg_repr_config_default(&c);
  if (config) c = *config;
  if ((c.phrase_mode != CG_MODE_AVERAGE && c.phrase_mode != CG_MODE_PCA) ||
      (c.context_mode != CG_MODE_AVERAGE && c.context_mode != CG_MODE_PCA) ||
      (c.sense_mode != CG_SENSE_GLOBAL && c.sense_mode != CG_SENSE_MULTI)) {
    return invalid("unknown representation mode");
  }
  if (c.sense_mode == CG_SENSE_GLOBAL && !store) return invalid("global sense mode needs an embedding store");
  if (c.sense_mode == CG_SENSE_MULTI && !senses) return invalid("multi-sense mode needs a multi-sense store");
  return guarded([&] {
    ReprConfig rc;
    rc.phrase = c.phrase_mode == CG_MODE_PCA ? PhraseMode::pca : PhraseMode::average;
    rc.context = c.context_mode == CG_MODE_PCA ? ContextMode::pca : ContextMode::average;
    rc.sense = c.sense_mode == CG_SENSE_MULTI ? SenseMode::multisense : SenseMode::global;
    rc.variance_ratio = c.variance_ratio;
    rc.validate();
    Resources res;
    res.store = store ? &store->store : nullptr;
    res.senses = senses ? &senses->store : nullptr;
    res.stopwords = &stop->policy;
    *out = new cg_scorer{res, rc};
  });
}

void cg_scorer_free(cg_scorer* scorer) { delete scorer; }

cg_status cg_score_phrase(const cg_scorer* scorer, const cg_instance* inst, cg_score_report* report,
                          double* per_sense, size_t per_sense_cap) {
  if (!scorer || !inst || !report) return invalid("NULL argument");
  return guarded([&] {
    fill_report(score_phrase(inst->inst, scorer->res, scorer->config), report, per_sense, per_sense_cap);
  });
}

cg_status cg_score_component(const cg_scorer* scorer, const cg_instance* inst, size_t component,
                             cg_score_report* report, double* per_sense, size_t per_sense_cap) {
  if (!scorer || !inst || !report) return invalid("NULL argument");
  return guarded([&] {
    fill_report(lexical_idiomaticity_score(inst->inst, component, scorer->res, scorer->config), report,
                per_sense, per_sense_cap);
  });
}

cg_status cg_classify_phrase(const cg_scorer* scorer, const cg_instance* inst, double variance_ratio,
                             double threshold, int* label, double* score) {
  if (!scorer || !inst || !label) return invalid("NULL argument");
  return guarded([&] {
    ReprConfig c = scorer->config;
    c.variance_ratio = variance_ratio;
    auto r = score_phrase(inst->inst, scorer->res, c);
    *label = from_label(threshold_label(r.score, threshold));
    if (score) *score = r.score;
  });
}

cg_status cg_projection_cosine(const double* context, size_t n, size_t d, double variance_ratio,
                               const double* v, double* score, size_t* m_used) {
  if (!context || !v || !score) return invalid("NULL argument");
  return guarded([&] {
    std::vector<Vector> cols;
    cols.reserve(n);
    for (size_t j = 0; j < n; ++j) cols.emplace_back(context + j * d, context + (j + 1) * d);
    auto s = principal_subspace(cols, variance_ratio);
    *score = projection_cosine(std::span<const double>(v, d), s);
    if (m_used) *m_used = s.rank();
  });
}

// ---- task features

cg_status cg_sarcasm_features(const cg_scorer* scorer, const cg_instance* inst, size_t k,
                              const char* pos_classes, double* out) {
  if (!scorer || !inst || !out) return invalid("NULL argument");
  if (k == 0) return invalid("k must be positive");
  return guarded([&] {
    SarcasmOptions o;
    o.k = k;
    if (pos_classes) o.pos_classes = split_classes(pos_classes);
    auto f = sarcasm_features(inst->inst, scorer->res, scorer->config, o);
    std::copy(f.begin(), f.end(), out);
  });
}

cg_status cg_metaphor_features(const cg_scorer* scorer, const cg_instance* inst, double* out,
                               size_t* count, int* structure, int* short_sentence) {
  if (!scorer || !inst || !out) return invalid("NULL argument");
  return guarded([&] {
    auto f = metaphor_features(inst->inst, scorer->res, scorer->config);
    std::copy(f.values.begin(), f.values.end(), out);
    if (count) *count = f.values.size();
    if (structure) *structure = f.structure == Structure::svo ? CG_STRUCTURE_SVO : CG_STRUCTURE_AN;
    if (short_sentence) *short_sentence = f.short_sentence;
  });
}

// ---- tuning and evaluation

void cg_grid_default(cg_grid* grid) {
  if (!grid) return;
  const Grid& g = default_grid_storage();
  grid->variance_ratios = g.variance_ratios.data();
  grid->n_variance_ratios = g.variance_ratios.size();
  grid->thresholds = g.thresholds.data();
  grid->n_thresholds = g.thresholds.size();
}

cg_status cg_tune(const cg_scorer* scorer, const cg_instance* const* train, size_t n, int component,
                  const cg_grid* grid, cg_tune_result* out) {
  if (!scorer || (!train && n) || !out) return invalid("NULL argument");
  return guarded([&] {
    Grid g = to_grid(grid);
    auto items = gather(train, n);
    // Pre-score every usable instance at each ratio, then search the grid.
    std::vector<std::vector<double>> scores(g.variance_ratios.size());
    std::vector<Label> gold;
    size_t skipped = 0;
    for (const auto& inst : items) {
      auto label = inst.gold(component);
      if (!label) {
        ++skipped;
        continue;
      }
      std::vector<double> column;
      try {
        for (double ratio : g.variance_ratios) {
          ReprConfig c = scorer->config;
          c.variance_ratio = ratio;
          column.push_back(component < 0
                               ? score_phrase(inst, scorer->res, c).score
                               : lexical_idiomaticity_score(inst, static_cast<size_t>(component),
                                                            scorer->res, c).score);
        }
      } catch (const Error& e) {
        auto code = e.code();
        if (code != ErrorCode::out_of_vocabulary && code != ErrorCode::empty_context &&
            code != ErrorCode::degenerate_context && code != ErrorCode::zero_norm) {
          throw;
        }
        ++skipped;
        continue;
      }
      for (size_t r = 0; r < column.size(); ++r) scores[r].push_back(column[r]);
      gold.push_back(*label);
    }
    if (gold.empty()) throw Error(ErrorCode::invalid_argument, "no scorable training instances");
    std::vector<size_t> subset(gold.size());
    for (size_t i = 0; i < subset.size(); ++i) subset[i] = i;
    auto t = tune_on_scores(scores, gold, subset, g);
    out->variance_ratio = t.hp.variance_ratio;
    out->threshold = t.hp.threshold;
    out->accuracy = t.accuracy;
    out->used = gold.size();
    out->skipped = skipped;
  });
}

cg_status cg_compute_metrics(const int* predicted, const int* gold, size_t n, int positive,
                             cg_metrics* out) {
  if (!predicted || !gold || !out) return invalid("NULL argument");
  return guarded([&] {
    std::vector<Label> p, g;
    for (size_t i = 0; i < n; ++i) {
      p.push_back(to_label(predicted[i]));
      g.push_back(to_label(gold[i]));
    }
    fill_metrics(compute_metrics(p, g, to_label(positive)), out);
  });
}

cg_status cg_kfold(size_t n, size_t k, uint64_t seed, size_t* fold_of) {
  if (!fold_of && n) return invalid("NULL argument");
  return guarded([&] {
    auto folds = kfold(n, k, seed);
    for (size_t f = 0; f < folds.size(); ++f) {
      for (size_t i : folds[f]) fold_of[i] = f;
    }
  });
}

cg_status cg_counts_load(const char* unigram_path, const char* bigram_path, cg_counts** out) {
  if (!unigram_path || !bigram_path || !out) return invalid("NULL argument");
  *out = nullptr;
  return guarded([&] { *out = new cg_counts{CountTable::load_tsv(unigram_path, bigram_path)}; });
}

cg_status cg_counts_from_text(const char* corpus_path, cg_counts** out) {
  if (!corpus_path || !out) return invalid("NULL argument");
  *out = nullptr;
  return guarded([&] {
    std::ifstream in(corpus_path);
    if (!in) throw Error(ErrorCode::io, std::string("cannot open ") + corpus_path);
    *out = new cg_counts{CountTable::count_text(in)};
  });
}

void cg_counts_free(cg_counts* counts) { delete counts; }

cg_status cg_pmi(const cg_counts* counts, const char* w1, const char* w2, double* out) {
  if (!counts || !w1 || !w2 || !out) return invalid("NULL argument");
  return guarded([&] { *out = pmi(counts->table, w1, w2); });
}

int cg_pmi_classify(double score, double threshold) { return from_label(pmi_classify(score, threshold)); }

void cg_eval_options_default(cg_eval_options* options) {
  if (!options) return;
  EvaluationOptions d;
  options->task = CG_TASK_CLASSIFY_MWE;
  options->method = CG_METHOD_SUBSPACE;
  options->folds = d.folds;
  options->seed = d.seed;
  options->grid = nullptr;
  options->component = 0;
  options->k = d.sarcasm.k;
  options->pos_classes = nullptr;
  options->positive = CG_LABEL_NON_COMPOSITIONAL;
  options->counts = nullptr;
  options->learning_rate = d.logreg.learning_rate;
  options->epochs = d.logreg.epochs;
  options->l2 = d.logreg.l2;
}

cg_status cg_evaluate(const cg_scorer* scorer, const cg_instance* const* instances, size_t n,
                      const cg_eval_options* options, cg_evaluation** out) {
  if (!scorer || (!instances && n) || !options || !out) return invalid("NULL argument");
  *out = nullptr;
  if (options->task < CG_TASK_CLASSIFY_MWE || options->task > CG_TASK_METAPHOR) return invalid("unknown task");
  if (options->method != CG_METHOD_SUBSPACE && options->method != CG_METHOD_PMI) return invalid("unknown method");
  if (options->k == 0) return invalid("k must be positive");
  return guarded([&] {
    EvaluationOptions o;
    o.task = static_cast<Task>(options->task);
    o.method = options->method == CG_METHOD_PMI ? Method::pmi : Method::subspace;
    o.folds = options->folds;
    o.seed = options->seed;
    o.grid = to_grid(options->grid);
    o.component = options->component;
    o.sarcasm.k = options->k;
    if (options->pos_classes) o.sarcasm.pos_classes = split_classes(options->pos_classes);
    o.positive = to_label(options->positive);
    o.counts = options->counts ? &options->counts->table : nullptr;
    o.logreg = {options->learning_rate, options->epochs, options->l2};
    auto items = gather(instances, n);
    *out = new cg_evaluation{cross_validate(items, scorer->res, scorer->config, o)};
  });
}

void cg_evaluation_free(cg_evaluation* eval) { delete eval; }

void cg_evaluation_metrics(const cg_evaluation* eval, cg_metrics* out) {
  if (eval && out) fill_metrics(eval->result.metrics, out);
}

size_t cg_evaluation_evaluated(const cg_evaluation* eval) { return eval ? eval->result.evaluated : 0; }
size_t cg_evaluation_skipped(const cg_evaluation* eval) { return eval ? eval->result.skipped.size() : 0; }
size_t cg_evaluation_fold_count(const cg_evaluation* eval) { return eval ? eval->result.folds.size() : 0; }

cg_status cg_evaluation_fold(const cg_evaluation* eval, size_t fold, cg_fold_report* out) {
  if (!eval || !out) return invalid("NULL argument");
  if (fold >= eval->result.folds.size()) return invalid("fold index out of range");
  const auto& f = eval->result.folds[fold];
  out->train_size = f.train_size;
  out->test_size = f.test_size;
  out->variance_ratio = f.hp.variance_ratio;
  out->threshold = f.hp.threshold;
  out->train_accuracy = f.train_accuracy;
  return CG_OK;
}

cg_status cg_evaluation_fold_weights(const cg_evaluation* eval, size_t fold, double* out, size_t cap,
                                     size_t* count) {
  if (!eval || !count) return invalid("NULL argument");
  if (fold >= eval->result.folds.size()) return invalid("fold index out of range");
  const auto& w = eval->result.folds[fold].weights;
  *count = w.size();
  if (out) std::copy_n(w.begin(), std::min(cap, w.size()), out);
  return CG_OK;
}

int cg_evaluation_prediction(const cg_evaluation* eval, size_t i, int* label) {
  if (!eval || i >= eval->result.predictions.size()) return 0;
  const auto& p = eval->result.predictions[i];
  if (!p) return 0;
  if (label) *label = from_label(*p);
  return 1;
}

// ---- logistic regression

cg_status cg_logreg_train(const double* x, size_t rows, size_t cols, const int* y, double learning_rate,
                          size_t epochs, double l2, cg_logreg** out) {
  if (!x || !y || !out) return invalid("NULL argument");
  *out = nullptr;
  return guarded([&] {
    FeatureMatrix m;
    for (size_t r = 0; r < rows; ++r) m.emplace_back(x + r * cols, x + (r + 1) * cols);
    std::vector<int> labels(y, y + rows);
    *out = new cg_logreg{train_logreg(m, labels, {learning_rate, epochs, l2})};
  });
}

void cg_logreg_free(cg_logreg* model) { delete model; }
size_t cg_logreg_weight_count(const cg_logreg* model) { return model ? model->model.weights().size() : 0; }

void cg_logreg_weights(const cg_logreg* model, double* out) {
  if (model && out) std::copy(model->model.weights().begin(), model->model.weights().end(), out);
}

cg_status cg_logreg_predict(const cg_logreg* model, const double* x, int* label, double* probability) {
  if (!model || !x) return invalid("NULL argument");
  return guarded([&] {
    std::span<const double> f(x, model->model.feature_count());
    double p = model->model.probability(f);
    if (label) *label = p >= 0.5 ? 1 : 0;
    if (probability) *probability = p;
  });
}

cg_status cg_histogram(const double* scores, size_t n, size_t bins, size_t* counts) {
  if ((!scores && n) || !counts) return invalid("NULL argument");
  return guarded([&] {
    auto h = histogram(std::span<const double>(scores, n), bins);
    std::copy(h.begin(), h.end(), counts);
  });
}

}  // extern "C"
