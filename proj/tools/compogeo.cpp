// compogeo: batch front end over the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "compogeo/compogeo.h"

#ifndef COMPOGEO_DEFAULT_STOPWORDS
#define COMPOGEO_DEFAULT_STOPWORDS "data/stopwords/en.txt"
#endif

using json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string emb, multi_emb, data, stopwords, lang = "en";
  std::string phrase_mode = "pca", context_mode = "pca", sense_mode = "global";
  double variance_ratio = 0.6;
  double threshold = 0.5;
  std::string grid = "default";
  std::string task = "classify-mwe";
  std::string method = "subspace";
  std::string positive = "non_compositional";
  std::string pos_classes = "JJ,RB,VB";
  std::string unigrams, bigrams, corpus;
  std::optional<std::size_t> component;
  std::size_t k = 4;
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::size_t histogram = 0;
  std::string out;
  bool preserve_case = false;
  bool skip_errors = false;
};

struct Usage {
  std::string message;
};

// Data error carrying the already formatted "file:line: message" text.
struct DataError {
  std::string message;
};

[[noreturn]] void data_error(cg_status status, const std::string& file, std::size_t line = 0) {
  std::string where = file;
  if (line == 0) line = cg_last_error_line();
  if (line > 0) where += ":" + std::to_string(line);
  throw DataError{where + ": " + cg_last_error() + " [" + cg_status_name(status) + "]"};
}

void check(cg_status status, const std::string& file) {
  if (status != CG_OK) data_error(status, file);
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
template <typename T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

using Store = Handle<cg_store, cg_store_free>;
using MultiStore = Handle<cg_multi_store, cg_multi_store_free>;
using Stopwords = Handle<cg_stopwords, cg_stopwords_free>;
using Instance = Handle<cg_instance, cg_instance_free>;
using Reader = Handle<cg_reader, cg_reader_free>;
using Scorer = Handle<cg_scorer, cg_scorer_free>;
using Counts = Handle<cg_counts, cg_counts_free>;
using Evaluation = Handle<cg_evaluation, cg_evaluation_free>;

bool recoverable(cg_status s) {
  return s == CG_ERR_OUT_OF_VOCABULARY || s == CG_ERR_EMPTY_CONTEXT || s == CG_ERR_DEGENERATE_CONTEXT ||
         s == CG_ERR_ZERO_NORM || s == CG_ERR_MISSING_ROLE;
}

int mode_of(const std::string& s) { return s == "pca" ? CG_MODE_PCA : CG_MODE_AVERAGE; }

const char* label_name(int label) {
  return label == CG_LABEL_COMPOSITIONAL ? "compositional" : "non_compositional";
}

json gold_json(const cg_instance* inst, int component) {
  int g = 0;
  if (!cg_instance_gold(inst, component, &g)) return nullptr;
  return label_name(g);
}

std::string gold_csv(const cg_instance* inst, int component) {
  int g = 0;
  return cg_instance_gold(inst, component, &g) ? label_name(g) : "";
}

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double one_decimal_percent(double fraction) { return std::round(fraction * 1000.0) / 10.0; }

// Everything a run needs, loaded once.
struct Session {
  Store store;
  MultiStore multi;
  Stopwords stop;
  Scorer scorer;
};

std::string stopword_path(const Options& o) {
  if (!o.stopwords.empty()) return o.stopwords;
  if (const char* env = std::getenv("COMPOGEO_STOPWORDS"); env && *env) return env;
  return COMPOGEO_DEFAULT_STOPWORDS;
}

Session open_session(const Options& o) {
  Session s;
  const int lower = o.preserve_case ? 0 : 1;
  std::size_t dups = 0;
  if (!o.emb.empty()) {
    cg_store* st = nullptr;
    check(cg_store_load(o.emb.c_str(), lower, &st, &dups), o.emb);
    s.store.reset(st);
    if (dups) std::cerr << "compogeo: " << o.emb << ": " << dups << " duplicate rows, last kept\n";
  }
  if (!o.multi_emb.empty()) {
    cg_multi_store* ms = nullptr;
    check(cg_multi_store_load(o.multi_emb.c_str(), lower, &ms, &dups), o.multi_emb);
    s.multi.reset(ms);
    if (dups) std::cerr << "compogeo: " << o.multi_emb << ": " << dups << " duplicate entries, last kept\n";
  }
  std::string sw = stopword_path(o);
  cg_stopwords* stop = nullptr;
  check(cg_stopwords_load(sw.c_str(), o.lang.c_str(), &stop), sw);
  s.stop.reset(stop);

  cg_repr_config c;
  c.phrase_mode = mode_of(o.phrase_mode);
  c.context_mode = mode_of(o.context_mode);
  c.sense_mode = o.sense_mode == "multi" ? CG_SENSE_MULTI : CG_SENSE_GLOBAL;
  c.variance_ratio = o.variance_ratio;
  cg_scorer* sc = nullptr;
  check(cg_scorer_new(s.store.get(), s.multi.get(), s.stop.get(), &c, &sc), "configuration");
  s.scorer.reset(sc);
  return s;
}

struct GridData {
  std::vector<double> ratios, thresholds;
  cg_grid grid{};
  bool is_default = true;
};

GridData load_grid(const std::string& source) {
  GridData g;
  if (source == "default") return g;
  std::ifstream in(source);
  if (!in) throw DataError{source + ": cannot open grid file"};
  try {
    json j = json::parse(in);
    g.ratios = j.at("variance_ratios").get<std::vector<double>>();
    g.thresholds = j.at("thresholds").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw DataError{source + ": bad grid file: " + e.what()};
  }
  g.grid = {g.ratios.data(), g.ratios.size(), g.thresholds.data(), g.thresholds.size()};
  g.is_default = false;
  return g;
}

// Per-instance work result: text to emit or a failure with its status.
struct Outcome {
  std::string text;
  cg_status status = CG_OK;
  std::string message;
  std::size_t line = 0;
};

using Work = Outcome (*)(const Session&, const Options&, const cg_instance*);

Outcome ok(std::string text) {
  Outcome o;
  o.text = std::move(text);
  return o;
}

Outcome failed(cg_status status, const cg_instance* inst) {
  return {"", status, cg_last_error(), cg_instance_line(inst)};
}

Outcome score_one(const Session& s, const Options&, const cg_instance* inst) {
  cg_score_report r;
  std::vector<double> per(64);
  cg_status st = cg_score_phrase(s.scorer.get(), inst, &r, per.data(), per.size());
  if (st != CG_OK) return failed(st, inst);
  if (r.n_senses > per.size()) {
    per.resize(r.n_senses);
    cg_score_phrase(s.scorer.get(), inst, &r, per.data(), per.size());
  }
  per.resize(r.n_senses);
  json j;
  j["line"] = cg_instance_line(inst);
  j["score"] = r.score;
  j["m"] = r.m_used;
  j["n_context"] = r.n_context;
  j["per_sense"] = per;
  return ok(j.dump());
}

Outcome classify_one(const Session& s, const Options& o, const cg_instance* inst) {
  int label = 0;
  double score = 0.0;
  cg_status st = cg_classify_phrase(s.scorer.get(), inst, o.variance_ratio, o.threshold, &label, &score);
  if (st != CG_OK) return failed(st, inst);
  json j;
  j["line"] = cg_instance_line(inst);
  j["score"] = score;
  j["label"] = label_name(label);
  j["gold"] = gold_json(inst, -1);
  return ok(j.dump());
}

Outcome idiomaticity_one(const Session& s, const Options& o, const cg_instance* inst) {
  std::size_t lo = 0, hi = cg_instance_phrase_size(inst);
  if (o.component) {
    lo = *o.component;
    hi = lo + 1;
  }
  json comps = json::array();
  for (std::size_t c = lo; c < hi; ++c) {
    cg_score_report r;
    cg_status st = cg_score_component(s.scorer.get(), inst, c, &r, nullptr, 0);
    if (st != CG_OK) return failed(st, inst);
    json e;
    e["component"] = c;
    e["score"] = r.score;
    e["label"] = label_name(r.score >= o.threshold ? CG_LABEL_COMPOSITIONAL : CG_LABEL_NON_COMPOSITIONAL);
    e["gold"] = gold_json(inst, static_cast<int>(c));
    comps.push_back(std::move(e));
  }
  json j;
  j["line"] = cg_instance_line(inst);
  j["components"] = std::move(comps);
  return ok(j.dump());
}

Outcome sarcasm_one(const Session& s, const Options& o, const cg_instance* inst) {
  std::vector<double> f(o.k);
  cg_status st = cg_sarcasm_features(s.scorer.get(), inst, o.k, o.pos_classes.c_str(), f.data());
  if (st != CG_OK) return failed(st, inst);
  std::string row = std::to_string(cg_instance_line(inst));
  for (double v : f) row += "," + csv_number(v);
  row += "," + gold_csv(inst, -1);
  return ok(row);
}

Outcome metaphor_one(const Session& s, const Options&, const cg_instance* inst) {
  double f[4];
  std::size_t count = 0;
  int structure = 0, short_sentence = 0;
  cg_status st = cg_metaphor_features(s.scorer.get(), inst, f, &count, &structure, &short_sentence);
  if (st != CG_OK) return failed(st, inst);
  std::string row = std::to_string(cg_instance_line(inst));
  row += structure == CG_STRUCTURE_SVO ? ",svo" : ",an";
  for (std::size_t i = 0; i < 4; ++i) row += "," + (i < count ? csv_number(f[i]) : std::string());
  row += short_sentence ? ",1" : ",0";
  row += "," + gold_csv(inst, -1);
  return ok(row);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw DataError{path + ": cannot open for writing"};
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<Instance> read_all(const std::string& path) {
  cg_reader* r = nullptr;
  check(cg_reader_open(path.c_str(), &r), path);
  Reader reader(r);
  std::vector<Instance> out;
  for (;;) {
    cg_instance* inst = nullptr;
    check(cg_reader_next(reader.get(), &inst), path);
    if (!inst) break;
    out.emplace_back(inst);
  }
  return out;
}

// Streams the dataset in chunks; each chunk is scored by `jobs` threads and
// the results are written back in input order.
void stream(const Session& s, const Options& o, Work work, std::ostream& os,
            std::vector<double>* scores = nullptr) {
  cg_reader* r = nullptr;
  check(cg_reader_open(o.data.c_str(), &r), o.data);
  Reader reader(r);
  const std::size_t jobs = std::max<std::size_t>(1, o.jobs);
  const std::size_t chunk = 64 * jobs;
  std::vector<Instance> batch;
  std::vector<Outcome> results;
  bool done = false;
  while (!done) {
    batch.clear();
    while (batch.size() < chunk) {
      cg_instance* inst = nullptr;
      check(cg_reader_next(reader.get(), &inst), o.data);
      if (!inst) {
        done = true;
        break;
      }
      batch.emplace_back(inst);
    }
    results.assign(batch.size(), Outcome{});
    auto run = [&](std::size_t first) {
      for (std::size_t i = first; i < batch.size(); i += jobs) results[i] = work(s, o, batch[i].get());
    };
    if (jobs == 1 || batch.size() < 2) {
      run(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(run, t);
      for (auto& t : pool) t.join();
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const Outcome& res = results[i];
      if (res.status != CG_OK) {
        std::string where = o.data + ":" + std::to_string(res.line) + ": " + res.message;
        if (o.skip_errors && recoverable(res.status)) {
          std::cerr << "compogeo: " << where << " (skipped)\n";
          continue;
        }
        throw DataError{where + " [" + cg_status_name(res.status) + "]"};
      }
      if (scores) {
        scores->push_back(json::parse(res.text).at("score").get<double>());
      } else {
        os << res.text << '\n';
      }
    }
  }
}

json metrics_json(const cg_metrics& m) {
  auto maybe = [](double v, int undefined) { return undefined ? json(nullptr) : json(v); };
  auto pct = [](double v, int undefined) { return undefined ? json(nullptr) : json(one_decimal_percent(v)); };
  json j;
  j["tp"] = m.tp;
  j["fp"] = m.fp;
  j["tn"] = m.tn;
  j["fn"] = m.fn;
  j["accuracy"] = m.accuracy;
  j["precision"] = maybe(m.precision, m.precision_undefined);
  j["recall"] = maybe(m.recall, m.recall_undefined);
  j["f1"] = maybe(m.f1, m.f1_undefined);
  j["percent"] = {{"accuracy", one_decimal_percent(m.accuracy)},
                  {"precision", pct(m.precision, m.precision_undefined)},
                  {"recall", pct(m.recall, m.recall_undefined)},
                  {"f1", pct(m.f1, m.f1_undefined)}};
  return j;
}

int task_code(const std::string& t) {
  if (t == "classify-mwe") return CG_TASK_CLASSIFY_MWE;
  if (t == "idiomaticity") return CG_TASK_IDIOMATICITY;
  if (t == "sarcasm") return CG_TASK_SARCASM;
  if (t == "metaphor") return CG_TASK_METAPHOR;
  throw Usage{"unknown task '" + t + "'"};
}

Counts load_counts(const Options& o) {
  cg_counts* c = nullptr;
  if (!o.corpus.empty()) {
    check(cg_counts_from_text(o.corpus.c_str(), &c), o.corpus);
  } else if (!o.unigrams.empty() && !o.bigrams.empty()) {
    check(cg_counts_load(o.unigrams.c_str(), o.bigrams.c_str(), &c), o.unigrams);
  } else {
    throw Usage{"--method pmi needs --corpus or both --unigrams and --bigrams"};
  }
  return Counts(c);
}

void run_evaluate(const Session& s, const Options& o, std::ostream& os) {
  cg_eval_options eo;
  cg_eval_options_default(&eo);
  eo.task = task_code(o.task);
  eo.method = o.method == "pmi" ? CG_METHOD_PMI : CG_METHOD_SUBSPACE;
  eo.folds = o.folds;
  eo.seed = o.seed;
  GridData grid = load_grid(o.grid);
  eo.grid = grid.is_default ? nullptr : &grid.grid;
  eo.component = o.component.value_or(0);
  eo.k = o.k;
  eo.pos_classes = o.pos_classes.c_str();
  eo.positive = o.positive == "compositional" ? CG_LABEL_COMPOSITIONAL : CG_LABEL_NON_COMPOSITIONAL;
  Counts counts;
  if (eo.method == CG_METHOD_PMI) {
    counts = load_counts(o);
    eo.counts = counts.get();
  }

  auto items = read_all(o.data);
  std::vector<const cg_instance*> ptrs;
  for (auto& i : items) ptrs.push_back(i.get());
  cg_evaluation* ev = nullptr;
  check(cg_evaluate(s.scorer.get(), ptrs.data(), ptrs.size(), &eo, &ev), o.data);
  Evaluation eval(ev);

  cg_metrics m;
  cg_evaluation_metrics(eval.get(), &m);
  json j;
  j["task"] = o.task;
  j["method"] = o.method;
  j["phrase_mode"] = o.phrase_mode;
  j["context_mode"] = o.context_mode;
  j["sense_mode"] = o.sense_mode;
  j["folds"] = o.folds;
  j["seed"] = o.seed;
  j["positive"] = o.positive;
  j["instances"] = items.size();
  j["evaluated"] = cg_evaluation_evaluated(eval.get());
  j["skipped"] = cg_evaluation_skipped(eval.get());
  j["metrics"] = metrics_json(m);
  const bool feature_task = eo.task == CG_TASK_SARCASM || eo.task == CG_TASK_METAPHOR;
  json folds = json::array();
  for (std::size_t f = 0; f < cg_evaluation_fold_count(eval.get()); ++f) {
    cg_fold_report r;
    cg_evaluation_fold(eval.get(), f, &r);
    json fj;
    fj["train_size"] = r.train_size;
    fj["test_size"] = r.test_size;
    if (feature_task) {
      std::size_t count = 0;
      cg_evaluation_fold_weights(eval.get(), f, nullptr, 0, &count);
      std::vector<double> w(count);
      cg_evaluation_fold_weights(eval.get(), f, w.data(), w.size(), &count);
      fj["weights"] = w;
    } else {
      if (eo.method == CG_METHOD_SUBSPACE) {
        fj["variance_ratio"] = r.variance_ratio;
        fj["train_accuracy"] = r.train_accuracy;
      }
      fj["threshold"] = r.threshold;
    }
    folds.push_back(std::move(fj));
  }
  j["fold_reports"] = std::move(folds);
  os << j.dump(2) << '\n';
}

void run_tune(const Session& s, const Options& o, std::ostream& os) {
  if (o.task != "classify-mwe" && o.task != "idiomaticity") {
    throw Usage{"tune applies to --task classify-mwe or idiomaticity"};
  }
  GridData grid = load_grid(o.grid);
  auto items = read_all(o.data);
  std::vector<const cg_instance*> ptrs;
  for (auto& i : items) ptrs.push_back(i.get());
  int component = o.task == "idiomaticity" ? static_cast<int>(o.component.value_or(0)) : -1;
  cg_tune_result t;
  check(cg_tune(s.scorer.get(), ptrs.data(), ptrs.size(), component, grid.is_default ? nullptr : &grid.grid,
                &t),
        o.data);
  json j;
  j["task"] = o.task;
  j["variance_ratio"] = t.variance_ratio;
  j["threshold"] = t.threshold;
  j["accuracy"] = t.accuracy;
  j["percent"] = one_decimal_percent(t.accuracy);
  j["used"] = t.used;
  j["skipped"] = t.skipped;
  os << j.dump(2) << '\n';
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--emb", o.emb, "word2vec text embeddings");
  sub->add_option("--multi-emb", o.multi_emb, "multi-sense embeddings (global + K senses per word)");
  sub->add_option("--data", o.data, "JSONL dataset")->required();
  sub->add_option("--stopwords", o.stopwords, "stopword list (default $COMPOGEO_STOPWORDS, then English)");
  sub->add_option("--lang", o.lang, "language name recorded with the stopword list");
  sub->add_option("--phrase-mode", o.phrase_mode)->check(CLI::IsMember({"avg", "pca"}));
  sub->add_option("--context-mode", o.context_mode)->check(CLI::IsMember({"avg", "pca"}));
  sub->add_option("--sense-mode", o.sense_mode)->check(CLI::IsMember({"global", "multi"}));
  sub->add_option("--variance-ratio", o.variance_ratio)
      ->check(CLI::Validator(
          [](std::string& v) {
            double x = 0.0;
            bool ok = CLI::detail::lexical_cast(v, x) && x > 0.0 && x <= 1.0;
            return ok ? std::string() : "variance ratio must lie in (0, 1]";
          },
          "FLOAT in (0, 1]"));
  sub->add_option("--jobs", o.jobs, "scoring threads")->check(CLI::PositiveNumber);
  sub->add_option("--out", o.out, "output file (default stdout)");
  sub->add_flag("--preserve-case", o.preserve_case, "do not lowercase embedding keys");
  sub->add_flag("--skip-errors", o.skip_errors, "skip instances that cannot be scored");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Context-subspace compositionality scoring"};
  app.require_subcommand(1);
  Options o;

  auto* score = app.add_subcommand("score", "score every instance (JSON lines)");
  auto* classify = app.add_subcommand("classify-mwe", "label phrases by threshold (JSON lines)");
  auto* idiom = app.add_subcommand("idiomaticity", "score phrase components (JSON lines)");
  auto* sarcasm = app.add_subcommand("sarcasm-features", "k smallest candidate scores (CSV)");
  auto* metaphor = app.add_subcommand("metaphor-features", "SVO/AN role-score features (CSV)");
  auto* evaluate = app.add_subcommand("evaluate", "k-fold cross-validation (JSON)");
  auto* tune = app.add_subcommand("tune", "grid search on the whole dataset (JSON)");
  for (auto* sub : {score, classify, idiom, sarcasm, metaphor, evaluate, tune}) add_common(sub, o);

  score->add_option("--histogram", o.histogram, "emit binned score counts (CSV) instead")
      ->check(CLI::PositiveNumber);
  classify->add_option("--threshold", o.threshold);
  idiom->add_option("--threshold", o.threshold);
  idiom->add_option("--component", o.component, "score only this component");
  for (auto* sub : {sarcasm, evaluate}) {
    sub->add_option("--k", o.k, "sarcasm feature count")->check(CLI::PositiveNumber);
    sub->add_option("--pos-classes", o.pos_classes, "candidate tag prefixes, comma separated");
  }
  for (auto* sub : {evaluate, tune}) {
    sub->add_option("--task", o.task);
    sub->add_option("--grid", o.grid, "'default' or a JSON file with variance_ratios and thresholds");
    sub->add_option("--component", o.component, "idiomaticity component");
  }
  evaluate->add_option("--folds", o.folds)->check(CLI::Range(2, 1000000));
  evaluate->add_option("--seed", o.seed);
  evaluate->add_option("--method", o.method)->check(CLI::IsMember({"subspace", "pmi"}));
  evaluate->add_option("--positive", o.positive)->check(CLI::IsMember({"compositional", "non_compositional"}));
  evaluate->add_option("--unigrams", o.unigrams, "PMI unigram counts (word<TAB>count)");
  evaluate->add_option("--bigrams", o.bigrams, "PMI bigram counts (w1<TAB>w2<TAB>count)");
  evaluate->add_option("--corpus", o.corpus, "plain-text corpus to count for PMI");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (o.sense_mode == "multi" ? o.multi_emb.empty() : o.emb.empty()) {
      throw Usage{o.sense_mode == "multi" ? "--multi-emb is required with --sense-mode multi"
                                          : "--emb is required"};
    }
    if (sub == evaluate || sub == tune) task_code(o.task);

    Session s = open_session(o);
    Output out(o.out);
    std::ostream& os = out.os();
    if (sub == score) {
      if (o.histogram) {
        std::vector<double> scores;
        stream(s, o, score_one, os, &scores);
        std::vector<std::size_t> counts(o.histogram);
        check(cg_histogram(scores.data(), scores.size(), o.histogram, counts.data()), "histogram");
        os << "bin_lo,bin_hi,count\n";
        for (std::size_t b = 0; b < counts.size(); ++b) {
          double lo = static_cast<double>(b) / static_cast<double>(o.histogram);
          double hi = static_cast<double>(b + 1) / static_cast<double>(o.histogram);
          os << csv_number(lo) << ',' << csv_number(hi) << ',' << counts[b] << '\n';
        }
      } else {
        stream(s, o, score_one, os);
      }
    } else if (sub == classify) {
      stream(s, o, classify_one, os);
    } else if (sub == idiom) {
      stream(s, o, idiomaticity_one, os);
    } else if (sub == sarcasm) {
      os << "line";
      for (std::size_t i = 1; i <= o.k; ++i) os << ",f" << i;
      os << ",gold\n";
      stream(s, o, sarcasm_one, os);
    } else if (sub == metaphor) {
      os << "line,structure,f1,f2,f3,f4,short,gold\n";
      stream(s, o, metaphor_one, os);
    } else if (sub == evaluate) {
      run_evaluate(s, o, os);
    } else {
      run_tune(s, o, os);
    }
    os.flush();
    if (!os) throw DataError{(o.out.empty() ? std::string("stdout") : o.out) + ": write failed"};
  } catch (const Usage& u) {
    std::cerr << "compogeo: " << u.message << "\n\n" << sub->help();
    return 2;
  } catch (const DataError& e) {
    std::cerr << "compogeo: " << e.message << '\n';
    return 1;
  }
  return 0;
}
