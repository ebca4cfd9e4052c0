// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "compogeo/compogeo.h"

namespace fs = std::filesystem;

namespace {

struct Dir {
  fs::path root;
  Dir() {
    root = fs::temp_directory_path() / ("cg_capi_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(root);
  }
  ~Dir() { fs::remove_all(root); }
  std::string file(const std::string& name, const std::string& body) const {
    auto p = root / name;
    std::ofstream(p) << body;
    return p.string();
  }
};

const char* kVectors =
    "6 4\n"
    "the 1 1 1 1\n"
    "inx 1 0 0 0\n"
    "iny 0 1 0 0\n"
    "lit 0.6 0.8 0 0\n"
    "idi 0 0 0.5 1\n"
    "Mixed 0 0 1 0\n";

std::string instance(const char* phrase, const char* gold) {
  return std::string("{\"tokens\":[\"the\",\"") + phrase +
         "\",\"inx\",\"iny\"],\"target\":[1,2],\"pos\":[\"DT\",\"JJ\",\"NN\",\"NN\"],\"gold\":\"" + gold + "\"}";
}

struct Fixture {
  Dir dir;
  cg_store* store = nullptr;
  cg_stopwords* stop = nullptr;
  cg_scorer* scorer = nullptr;

  Fixture() {
    REQUIRE(cg_store_load(dir.file("v.vec", kVectors).c_str(), 1, &store, nullptr) == CG_OK);
    REQUIRE(cg_stopwords_load(dir.file("stop.txt", "# en\nthe\n").c_str(), "en", &stop) == CG_OK);
    cg_repr_config c;
    cg_repr_config_default(&c);
    REQUIRE(cg_scorer_new(store, nullptr, stop, &c, &scorer) == CG_OK);
  }
  ~Fixture() {
    cg_scorer_free(scorer);
    cg_stopwords_free(stop);
    cg_store_free(store);
  }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(cg_version()) == "0.1.0");
  CHECK(std::string(cg_status_name(CG_OK)) == "ok");
  CHECK(std::string(cg_status_name(CG_ERR_OUT_OF_VOCABULARY)) == "out_of_vocabulary");
  CHECK(std::string(cg_status_name(CG_ERR_INTERNAL)) == "internal");
}

TEST_CASE("store lifecycle and lookup") {
  Fixture f;
  CHECK(cg_store_dim(f.store) == 4);
  CHECK(cg_store_size(f.store) == 6);
  double v[4];
  CHECK(cg_store_lookup(f.store, "LIT", v) == 1);
  CHECK(v[0] == 0.6);
  CHECK(cg_store_lookup(f.store, "mixed", v) == 1);
  CHECK(cg_store_lookup(f.store, "nope", v) == 0);
  CHECK(cg_stopwords_size(f.stop) == 1);
  CHECK(cg_stopwords_contains(f.stop, "the") == 1);

  auto saved = (f.dir.root / "copy.vec").string();
  REQUIRE(cg_store_save(f.store, saved.c_str()) == CG_OK);
  cg_store* copy = nullptr;
  REQUIRE(cg_store_load(saved.c_str(), 1, &copy, nullptr) == CG_OK);
  CHECK(cg_store_size(copy) == 6);
  cg_store_free(copy);
  cg_store_free(nullptr);
}

TEST_CASE("load errors carry status, message and line") {
  Dir dir;
  cg_store* s = nullptr;
  CHECK(cg_store_load((dir.root / "missing.vec").c_str(), 1, &s, nullptr) == CG_ERR_IO);
  CHECK(s == nullptr);
  CHECK(cg_last_error_line() == 0);

  auto bad = dir.file("bad.vec", "2 3\na 1 2 3\nb 1 2\n");
  CHECK(cg_store_load(bad.c_str(), 1, &s, nullptr) == CG_ERR_ARITY);
  CHECK(cg_last_error_line() == 3);
  std::string msg = cg_last_error();
  CHECK_FALSE(msg.empty());
  CHECK(msg.rfind("line", 0) != 0);

  auto dup = dir.file("dup.vec", "2 1\na 1\nA 2\n");
  size_t duplicates = 0;
  REQUIRE(cg_store_load(dup.c_str(), 1, &s, &duplicates) == CG_OK);
  CHECK(duplicates == 1);
  double v;
  cg_store_lookup(s, "a", &v);
  CHECK(v == 2.0);
  cg_store_free(s);

  cg_instance* inst = nullptr;
  CHECK(cg_instance_parse("{\"tokens\":[\"a\"],\"target\":[0,2]}", 9, &inst) != CG_OK);
  CHECK(cg_last_error_line() == 9);
}

TEST_CASE("scoring and classification") {
  Fixture f;
  cg_instance *lit = nullptr, *idi = nullptr, *oov = nullptr;
  REQUIRE(cg_instance_parse(instance("lit", "literal").c_str(), 1, &lit) == CG_OK);
  REQUIRE(cg_instance_parse(instance("idi", "idiomatic").c_str(), 2, &idi) == CG_OK);
  REQUIRE(cg_instance_parse(instance("zzz", "idiomatic").c_str(), 3, &oov) == CG_OK);
  CHECK(cg_instance_line(idi) == 2);
  CHECK(cg_instance_phrase_size(lit) == 1);
  int gold = -1;
  CHECK(cg_instance_gold(lit, -1, &gold) == 1);
  CHECK(gold == CG_LABEL_COMPOSITIONAL);

  cg_score_report r;
  REQUIRE(cg_score_phrase(f.scorer, lit, &r, nullptr, 0) == CG_OK);
  CHECK(r.score == doctest::Approx(1.0));
  CHECK(r.n_context == 2);
  REQUIRE(cg_score_phrase(f.scorer, idi, &r, nullptr, 0) == CG_OK);
  CHECK(std::abs(r.score) <= 1e-12);

  CHECK(cg_score_phrase(f.scorer, oov, &r, nullptr, 0) == CG_ERR_OUT_OF_VOCABULARY);
  CHECK(std::string(cg_last_error()).find("zzz") != std::string::npos);

  int label = -1;
  double score = 0;
  REQUIRE(cg_classify_phrase(f.scorer, idi, 0.6, 0.5, &label, &score) == CG_OK);
  CHECK(label == CG_LABEL_NON_COMPOSITIONAL);
  CHECK(cg_classify_phrase(f.scorer, lit, 1.5, 0.5, &label, &score) == CG_ERR_INVALID_ARGUMENT);

  double feats[3];
  REQUIRE(cg_sarcasm_features(f.scorer, lit, 3, "JJ", feats) == CG_OK);
  CHECK(feats[0] == doctest::Approx(1.0));
  CHECK(feats[2] == 1.0);

  const cg_instance* train[] = {lit, idi};
  cg_tune_result t;
  REQUIRE(cg_tune(f.scorer, train, 2, -1, nullptr, &t) == CG_OK);
  CHECK(t.accuracy == 1.0);
  CHECK(t.used == 2);
  CHECK(t.variance_ratio == 0.1);

  cg_instance_free(lit);
  cg_instance_free(idi);
  cg_instance_free(oov);
}

TEST_CASE("projection cosine on raw arrays") {
  const double ctx[] = {1, 0, 0, 0, 1, 0};  // e1, e2 in R^3
  const double v[] = {1, 1, 1};
  double score = 0;
  size_t m = 0;
  REQUIRE(cg_projection_cosine(ctx, 2, 3, 1.0, v, &score, &m) == CG_OK);
  CHECK(score == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(m == 2);
  const double zero[] = {0, 0, 0};
  CHECK(cg_projection_cosine(ctx, 2, 3, 1.0, zero, &score, &m) == CG_ERR_ZERO_NORM);
  CHECK(cg_projection_cosine(ctx, 0, 3, 1.0, v, &score, &m) == CG_ERR_EMPTY_CONTEXT);
}

TEST_CASE("reader and cross-validated evaluation") {
  Fixture f;
  std::string body;
  for (int i = 0; i < 10; ++i) body += instance(i % 2 ? "idi" : "lit", i % 2 ? "idiomatic" : "literal") + "\n\n";
  cg_reader* reader = nullptr;
  REQUIRE(cg_reader_open(f.dir.file("d.jsonl", body).c_str(), &reader) == CG_OK);
  std::vector<cg_instance*> all;
  for (;;) {
    cg_instance* inst = nullptr;
    REQUIRE(cg_reader_next(reader, &inst) == CG_OK);
    if (!inst) break;
    all.push_back(inst);
  }
  cg_reader_free(reader);
  REQUIRE(all.size() == 10);
  CHECK(cg_instance_line(all[1]) == 3);

  cg_eval_options o;
  cg_eval_options_default(&o);
  CHECK(o.folds == 5);
  CHECK(o.positive == CG_LABEL_NON_COMPOSITIONAL);
  o.seed = 11;
  cg_evaluation* e = nullptr;
  std::vector<const cg_instance*> view(all.begin(), all.end());
  REQUIRE(cg_evaluate(f.scorer, view.data(), view.size(), &o, &e) == CG_OK);
  cg_metrics m;
  cg_evaluation_metrics(e, &m);
  CHECK(m.accuracy == 1.0);
  CHECK(m.tp == 5);
  CHECK(cg_evaluation_evaluated(e) == 10);
  CHECK(cg_evaluation_skipped(e) == 0);
  CHECK(cg_evaluation_fold_count(e) == 5);
  cg_fold_report fr;
  REQUIRE(cg_evaluation_fold(e, 0, &fr) == CG_OK);
  CHECK(fr.train_size + fr.test_size == 10);
  CHECK(cg_evaluation_fold(e, 5, &fr) == CG_ERR_INVALID_ARGUMENT);
  int label = -1;
  CHECK(cg_evaluation_prediction(e, 1, &label) == 1);
  CHECK(label == CG_LABEL_NON_COMPOSITIONAL);
  cg_evaluation_free(e);

  o.folds = 20;
  CHECK(cg_evaluate(f.scorer, view.data(), view.size(), &o, &e) == CG_ERR_INVALID_ARGUMENT);
  for (auto* inst : all) cg_instance_free(inst);
}

TEST_CASE("metrics, folds, pmi, logistic regression") {
  const int pred[] = {0, 0, 0, 1};
  const int gold[] = {0, 0, 1, 0};
  cg_metrics m;
  REQUIRE(cg_compute_metrics(pred, gold, 4, CG_LABEL_NON_COMPOSITIONAL, &m) == CG_OK);
  CHECK(m.tp == 2);
  CHECK(m.precision == 2.0 / 3.0);
  CHECK(cg_compute_metrics(pred, gold, 0, 0, &m) == CG_ERR_INVALID_ARGUMENT);

  size_t fold_of[11];
  REQUIRE(cg_kfold(11, 5, 3, fold_of) == CG_OK);
  std::vector<int> sizes(5);
  for (size_t f : fold_of) sizes[f]++;
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<int>{2, 2, 2, 2, 3});
  CHECK(cg_kfold(3, 5, 3, fold_of) == CG_ERR_INVALID_ARGUMENT);

  Dir dir;
  cg_counts* c = nullptr;
  REQUIRE(cg_counts_load(dir.file("u.tsv", "hot\t100\ndog\t200\nrest\t9700\n").c_str(),
                         dir.file("b.tsv", "hot\tdog\t50\nx\ty\t950\n").c_str(), &c) == CG_OK);
  double p = 0;
  REQUIRE(cg_pmi(c, "hot", "dog", &p) == CG_OK);
  CHECK(p == doctest::Approx(std::log(250.0)));
  CHECK(cg_pmi(c, "dog", "hot", &p) == CG_ERR_ZERO_COUNT);
  CHECK(cg_pmi_classify(5.52, 3.0) == CG_LABEL_NON_COMPOSITIONAL);
  cg_counts_free(c);

  const double x[] = {-2, -1, 1, 2};
  const int y[] = {0, 0, 1, 1};
  cg_logreg* model = nullptr;
  REQUIRE(cg_logreg_train(x, 4, 1, y, 0.1, 500, 1e-4, &model) == CG_OK);
  REQUIRE(cg_logreg_weight_count(model) == 2);
  int label = -1;
  double prob = 0;
  REQUIRE(cg_logreg_predict(model, &x[3], &label, &prob) == CG_OK);
  CHECK(label == 1);
  CHECK(prob > 0.5);
  cg_logreg_free(model);
  const int same[] = {1, 1, 1, 1};
  CHECK(cg_logreg_train(x, 4, 1, same, 0.1, 500, 1e-4, &model) == CG_ERR_DEGENERATE_TRAINING);

  const double scores[] = {0.0, 0.5, 1.0};
  size_t counts[2];
  REQUIRE(cg_histogram(scores, 3, 2, counts) == CG_OK);
  CHECK(counts[0] == 1);
  CHECK(counts[1] == 2);
}
