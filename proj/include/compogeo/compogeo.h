/*
 * C interface to the compogeo library.
 *
 * Every fallible call returns a cg_status. On failure the message of the most
 * recent error on the calling thread is available from cg_last_error(), and
 * cg_last_error_line() gives the 1-based input line for data errors (0 when
 * none applies). Objects are opaque handles released with their *_free
 * function; passing NULL to a *_free function is a no-op.
 *
 * Handles are immutable once created and may be shared between threads,
 * except cg_reader, which belongs to one thread at a time.
 *
 * Labels are ints: CG_LABEL_COMPOSITIONAL (literal) or
 * CG_LABEL_NON_COMPOSITIONAL (idiomatic, sarcastic, metaphorical).
 */
#ifndef COMPOGEO_H
#define COMPOGEO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef CG_BUILDING_LIBRARY
#    define CG_API __declspec(dllexport)
#  else
#    define CG_API __declspec(dllimport)
#  endif
#else
#  define CG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cg_status {
  CG_OK = 0,
  CG_ERR_IO = 1,
  CG_ERR_PARSE,
  CG_ERR_ARITY,
  CG_ERR_NON_NUMERIC,
  CG_ERR_ZERO_VECTOR,
  CG_ERR_EMPTY_VOCABULARY,
  CG_ERR_EMPTY_CONTEXT,
  CG_ERR_DEGENERATE_CONTEXT,
  CG_ERR_DIMENSION_MISMATCH,
  CG_ERR_ZERO_NORM,
  CG_ERR_OUT_OF_VOCABULARY,
  CG_ERR_ZERO_COUNT,
  CG_ERR_INVALID_ARGUMENT,
  CG_ERR_UNKNOWN_TAG,
  CG_ERR_MISSING_ROLE,
  CG_ERR_DEGENERATE_TRAINING,
  CG_ERR_INTERNAL = 100
} cg_status;

enum { CG_LABEL_NON_COMPOSITIONAL = 0, CG_LABEL_COMPOSITIONAL = 1 };
enum { CG_MODE_AVERAGE = 0, CG_MODE_PCA = 1 };
enum { CG_SENSE_GLOBAL = 0, CG_SENSE_MULTI = 1 };
enum { CG_TASK_CLASSIFY_MWE = 0, CG_TASK_IDIOMATICITY, CG_TASK_SARCASM, CG_TASK_METAPHOR };
enum { CG_METHOD_SUBSPACE = 0, CG_METHOD_PMI = 1 };
enum { CG_STRUCTURE_SVO = 0, CG_STRUCTURE_AN = 1 };

CG_API const char* cg_version(void);
CG_API const char* cg_last_error(void);
CG_API size_t cg_last_error_line(void);
CG_API const char* cg_status_name(cg_status status);

/* ---- embeddings ------------------------------------------------------- */

typedef struct cg_store cg_store;
typedef struct cg_multi_store cg_multi_store;

/* word2vec text format. `lowercase` nonzero folds keys to lowercase.
 * `duplicates` (may be NULL) receives the number of replaced rows. */
CG_API cg_status cg_store_load(const char* path, int lowercase, cg_store** out, size_t* duplicates);
CG_API cg_status cg_store_save(const cg_store* store, const char* path);
CG_API void cg_store_free(cg_store* store);
CG_API size_t cg_store_dim(const cg_store* store);
CG_API size_t cg_store_size(const cg_store* store);
/* Copies the vector into `out` (dim doubles) and returns 1, or returns 0. */
CG_API int cg_store_lookup(const cg_store* store, const char* word, double* out);

CG_API cg_status cg_multi_store_load(const char* path, int lowercase, cg_multi_store** out,
                                     size_t* duplicates);
CG_API cg_status cg_multi_store_save(const cg_multi_store* store, const char* path);
CG_API void cg_multi_store_free(cg_multi_store* store);
CG_API size_t cg_multi_store_dim(const cg_multi_store* store);
CG_API size_t cg_multi_store_size(const cg_multi_store* store);
/* Number of senses of `word`, 0 when absent. */
CG_API size_t cg_multi_store_sense_count(const cg_multi_store* store, const char* word);

/* ---- preprocessing ---------------------------------------------------- */

typedef struct cg_stopwords cg_stopwords;

CG_API cg_status cg_stopwords_load(const char* path, const char* language, cg_stopwords** out);
CG_API void cg_stopwords_free(cg_stopwords* stop);
CG_API size_t cg_stopwords_size(const cg_stopwords* stop);
CG_API int cg_stopwords_contains(const cg_stopwords* stop, const char* token);

/* ---- datasets --------------------------------------------------------- */

typedef struct cg_instance cg_instance;
typedef struct cg_reader cg_reader;

CG_API cg_status cg_instance_parse(const char* json_line, size_t line, cg_instance** out);
CG_API void cg_instance_free(cg_instance* inst);
CG_API size_t cg_instance_line(const cg_instance* inst);
CG_API size_t cg_instance_phrase_size(const cg_instance* inst);
/* Gold label for the phrase (component < 0) or one component. Returns 1 and
 * writes `label` when present, 0 otherwise. */
CG_API int cg_instance_gold(const cg_instance* inst, int component, int* label);

CG_API cg_status cg_reader_open(const char* path, cg_reader** out);
/* Sets *out to the next instance, or to NULL at end of file. */
CG_API cg_status cg_reader_next(cg_reader* reader, cg_instance** out);
CG_API size_t cg_reader_line(const cg_reader* reader);
CG_API void cg_reader_free(cg_reader* reader);

/* ---- scoring ---------------------------------------------------------- */

typedef struct cg_repr_config {
  int phrase_mode;  /* CG_MODE_* */
  int context_mode; /* CG_MODE_* */
  int sense_mode;   /* CG_SENSE_* */
  double variance_ratio;
} cg_repr_config;

/* pca phrase, pca context, global senses, variance ratio 0.6 */
CG_API void cg_repr_config_default(cg_repr_config* config);

typedef struct cg_score_report {
  double score;
  size_t m_used;
  size_t n_context;
  size_t n_senses; /* per-sense scores available; 0 in global mode */
} cg_score_report;

typedef struct cg_scorer cg_scorer;

/* Borrows the stores and stopwords, which must outlive the scorer. Either
 * store may be NULL when the configured sense mode does not need it. */
CG_API cg_status cg_scorer_new(const cg_store* store, const cg_multi_store* senses,
                               const cg_stopwords* stop, const cg_repr_config* config,
                               cg_scorer** out);
CG_API void cg_scorer_free(cg_scorer* scorer);

/* Per-sense scores are written to `per_sense` (up to `per_sense_cap`,
 * either may be 0/NULL); report->n_senses gives the full count. */
CG_API cg_status cg_score_phrase(const cg_scorer* scorer, const cg_instance* inst,
                                 cg_score_report* report, double* per_sense, size_t per_sense_cap);
CG_API cg_status cg_score_component(const cg_scorer* scorer, const cg_instance* inst,
                                    size_t component, cg_score_report* report, double* per_sense,
                                    size_t per_sense_cap);
/* Compositional iff score >= threshold, scored at `variance_ratio`. */
CG_API cg_status cg_classify_phrase(const cg_scorer* scorer, const cg_instance* inst,
                                    double variance_ratio, double threshold, int* label,
                                    double* score);

/* Score of a d-vector against the principal subspace of n context vectors
 * stored column after column (n * d doubles). */
CG_API cg_status cg_projection_cosine(const double* context, size_t n, size_t d,
                                      double variance_ratio, const double* v, double* score,
                                      size_t* m_used);

/* ---- task features ---------------------------------------------------- */

/* `pos_classes` is a comma-separated tag-prefix list such as "JJ,RB,VB";
 * NULL selects that default. Writes k values. */
CG_API cg_status cg_sarcasm_features(const cg_scorer* scorer, const cg_instance* inst, size_t k,
                                     const char* pos_classes, double* out);

/* Writes 4 (SVO) or 3 (AN) values to `out` (room for 4 required). */
CG_API cg_status cg_metaphor_features(const cg_scorer* scorer, const cg_instance* inst,
                                      double* out, size_t* count, int* structure,
                                      int* short_sentence);

/* ---- tuning and evaluation -------------------------------------------- */

typedef struct cg_grid {
  const double* variance_ratios;
  size_t n_variance_ratios;
  const double* thresholds;
  size_t n_thresholds;
} cg_grid;

/* The built-in grid: ratios 0.1..1.0 step 0.1, thresholds 0..1 step 0.01.
 * The arrays are static. */
CG_API void cg_grid_default(cg_grid* grid);

typedef struct cg_tune_result {
  double variance_ratio;
  double threshold;
  double accuracy;
  size_t used;    /* instances that were scored */
  size_t skipped; /* instances without gold, out-of-vocabulary or contextless */
} cg_tune_result;

/* component < 0 tunes phrase classification, otherwise idiomaticity of that
 * component. `grid` NULL uses the default grid. */
CG_API cg_status cg_tune(const cg_scorer* scorer, const cg_instance* const* train, size_t n,
                         int component, const cg_grid* grid, cg_tune_result* out);

typedef struct cg_metrics {
  size_t tp, fp, tn, fn;
  double accuracy, precision, recall, f1;
  int precision_undefined, recall_undefined, f1_undefined;
} cg_metrics;

CG_API cg_status cg_compute_metrics(const int* predicted, const int* gold, size_t n, int positive,
                                    cg_metrics* out);
/* fold_of[i] receives the fold index of instance i. */
CG_API cg_status cg_kfold(size_t n, size_t k, uint64_t seed, size_t* fold_of);

typedef struct cg_counts cg_counts;

CG_API cg_status cg_counts_load(const char* unigram_path, const char* bigram_path, cg_counts** out);
CG_API cg_status cg_counts_from_text(const char* corpus_path, cg_counts** out);
CG_API void cg_counts_free(cg_counts* counts);
CG_API cg_status cg_pmi(const cg_counts* counts, const char* w1, const char* w2, double* out);
CG_API int cg_pmi_classify(double score, double threshold);

typedef struct cg_eval_options {
  int task;   /* CG_TASK_* */
  int method; /* CG_METHOD_* */
  size_t folds;
  uint64_t seed;
  const cg_grid* grid; /* NULL: default grid */
  size_t component;
  size_t k;                /* sarcasm */
  const char* pos_classes; /* sarcasm, NULL: "JJ,RB,VB" */
  int positive;            /* CG_LABEL_* */
  const cg_counts* counts; /* pmi */
  double learning_rate;
  size_t epochs;
  double l2;
} cg_eval_options;

CG_API void cg_eval_options_default(cg_eval_options* options);

typedef struct cg_fold_report {
  size_t train_size;
  size_t test_size;
  double variance_ratio;
  double threshold;
  double train_accuracy;
} cg_fold_report;

typedef struct cg_evaluation cg_evaluation;

CG_API cg_status cg_evaluate(const cg_scorer* scorer, const cg_instance* const* instances, size_t n,
                             const cg_eval_options* options, cg_evaluation** out);
CG_API void cg_evaluation_free(cg_evaluation* eval);
CG_API void cg_evaluation_metrics(const cg_evaluation* eval, cg_metrics* out);
CG_API size_t cg_evaluation_evaluated(const cg_evaluation* eval);
CG_API size_t cg_evaluation_skipped(const cg_evaluation* eval);
CG_API size_t cg_evaluation_fold_count(const cg_evaluation* eval);
CG_API cg_status cg_evaluation_fold(const cg_evaluation* eval, size_t fold, cg_fold_report* out);
/* Weights (features then intercept) of a feature-task fold; *count = 0 when
 * the fold predicted a constant. Writes up to `cap` values. */
CG_API cg_status cg_evaluation_fold_weights(const cg_evaluation* eval, size_t fold, double* out,
                                            size_t cap, size_t* count);
/* Prediction for input instance i: returns 1 and writes `label`, or 0 when
 * the instance was skipped. */
CG_API int cg_evaluation_prediction(const cg_evaluation* eval, size_t i, int* label);

/* ---- built-in classifier ---------------------------------------------- */

typedef struct cg_logreg cg_logreg;

/* `x` is row-major rows * cols; labels are 0/1. */
CG_API cg_status cg_logreg_train(const double* x, size_t rows, size_t cols, const int* y,
                                 double learning_rate, size_t epochs, double l2, cg_logreg** out);
CG_API void cg_logreg_free(cg_logreg* model);
CG_API size_t cg_logreg_weight_count(const cg_logreg* model);
CG_API void cg_logreg_weights(const cg_logreg* model, double* out);
CG_API cg_status cg_logreg_predict(const cg_logreg* model, const double* x, int* label,
                                   double* probability);

/* ---- utilities -------------------------------------------------------- */

/* Counts of scores per bin over [0, 1]; `counts` has room for `bins`. */
CG_API cg_status cg_histogram(const double* scores, size_t n, size_t bins, size_t* counts);

#ifdef __cplusplus
}
#endif

#endif /* COMPOGEO_H */
