#include <doctest.h>

#include <sstream>

#include "compogeo/embeddings.hpp"
#include "compogeo/error.hpp"
#include "compogeo/text.hpp"
#include "support.hpp"

using namespace compogeo;

namespace {

ErrorCode code_of(const std::string& text) {
  std::istringstream in(text);
  try {
    read_word2vec_text(in);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::io;
}

std::size_t line_of(const std::string& text) {
  std::istringstream in(text);
  try {
    read_word2vec_text(in);
  } catch (const Error& e) {
    return e.line();
  }
  return 0;
}

// Independent parse: split on whitespace and strtod every field.
std::vector<std::pair<std::string, Vector>> reparse(const std::string& text) {
  std::istringstream in(text);
  std::size_t count = 0, dim = 0;
  in >> count >> dim;
  std::vector<std::pair<std::string, Vector>> rows;
  for (std::size_t r = 0; r < count; ++r) {
    std::string word;
    in >> word;
    Vector v(dim);
    for (auto& x : v) {
      std::string f;
      in >> f;
      x = std::strtod(f.c_str(), nullptr);
    }
    rows.emplace_back(word, v);
  }
  return rows;
}

}  // namespace

TEST_CASE("minimal word2vec file") {
  std::istringstream in("2 3\ncat 1 0 0\ndog 0 1 0\n");
  auto loaded = read_word2vec_text(in);
  CHECK(loaded.store.dim() == 3);
  CHECK(loaded.store.size() == 2);
  CHECK(loaded.duplicates == 0);
  auto cat = loaded.store.lookup("cat");
  REQUIRE(cat);
  CHECK(Vector(cat->begin(), cat->end()) == Vector{1, 0, 0});
  CHECK_FALSE(loaded.store.lookup("unseen"));
  auto upper = loaded.store.lookup("Cat");
  REQUIRE(upper);
  CHECK((*upper)[0] == 1.0);
}

TEST_CASE("case folding can be turned off") {
  std::istringstream in("1 2\nCat 1 2\n");
  auto loaded = read_word2vec_text(in, CaseFolding::preserve);
  CHECK(loaded.store.contains("Cat"));
  CHECK_FALSE(loaded.store.contains("cat"));
}

TEST_CASE("unicode keys fold") {
  CHECK(fold_case("ÄPFEL") == "äpfel");
  CHECK(fold_case("ΑΘΗΝΑ") == "αθηνα");
  CHECK(fold_case("МОСКВА") == "москва");
  CHECK(fold_case("北京") == "北京");
}

TEST_CASE("loader errors name the line") {
  CHECK(code_of("1 3\ncat 1 0\n") == ErrorCode::arity);
  CHECK(line_of("1 3\ncat 1 0\n") == 2);
  CHECK(code_of("1 2\ncat 1 x\n") == ErrorCode::non_numeric);
  CHECK(code_of("1 2\ncat 0 0\n") == ErrorCode::zero_vector);
  CHECK(code_of("") == ErrorCode::empty_vocabulary);
  CHECK(code_of("0 3\n") == ErrorCode::empty_vocabulary);
  CHECK(code_of("two 3\n") == ErrorCode::parse);
  CHECK(code_of("2 2\ncat 1 0\n") == ErrorCode::parse);
  CHECK(code_of("1 2\ncat 1 0\ndog 0 1\n") == ErrorCode::parse);
  CHECK(code_of("1 2 3\ncat 1 0\n") == ErrorCode::parse);
  CHECK(code_of("1 2\ncat 1 inf\n") == ErrorCode::non_numeric);
}

TEST_CASE("duplicates: last occurrence wins and is counted") {
  std::istringstream in("3 2\ncat 1 0\ndog 0 1\nCAT 2 2\n");
  auto loaded = read_word2vec_text(in);
  CHECK(loaded.duplicates == 1);
  CHECK(loaded.store.size() == 2);
  CHECK((*loaded.store.lookup("cat"))[0] == 2.0);
}

TEST_CASE("store rejects bad inserts") {
  EmbeddingStore s(2);
  Vector bad{1, 2, 3};
  Vector zero{0, 0};
  CHECK_THROWS_AS(s.insert("x", bad), Error);
  CHECK_THROWS_AS(s.insert("x", zero), Error);
  CHECK_THROWS_AS(EmbeddingStore(0), Error);
}

TEST_CASE("50 x 8 fixture round-trips bit-exactly against an independent parse") {
  testing::Rng rng(11);
  std::ostringstream text;
  text << "50 8\n";
  for (int w = 0; w < 50; ++w) {
    text << "w" << w;
    for (int i = 0; i < 8; ++i) {
      char buf[40];
      std::snprintf(buf, sizeof buf, " %.9g", rng.normal());
      text << buf;
    }
    text << '\n';
  }
  std::istringstream in(text.str());
  auto loaded = read_word2vec_text(in);
  auto oracle = reparse(text.str());
  REQUIRE(oracle.size() == 50);
  for (const auto& [word, v] : oracle) {
    auto got = loaded.store.lookup(word);
    REQUIRE(got);
    CHECK(Vector(got->begin(), got->end()) == v);
  }

  // Serialize, reload, compare again.
  std::ostringstream out;
  write_word2vec_text(out, loaded.store);
  std::istringstream in2(out.str());
  auto again = read_word2vec_text(in2);
  for (const auto& [word, v] : oracle) {
    auto got = again.store.lookup(word);
    REQUIRE(got);
    CHECK(Vector(got->begin(), got->end()) == v);
  }
  CHECK(again.store.words() == loaded.store.words());
}

TEST_CASE("multi-sense minimal file") {
  std::istringstream in("check 2\n1 0 0\n0 1 0\n0 0 1\n");
  auto loaded = read_multisense_text(in);
  CHECK(loaded.store.dim() == 3);
  CHECK(loaded.store.size() == 1);
  auto* senses = loaded.store.senses("check");
  REQUIRE(senses);
  CHECK(senses->size() == 2);
  CHECK((*senses)[1] == Vector{0, 0, 1});
  CHECK(loaded.store.globals().contains("check"));
}

TEST_CASE("multi-sense errors") {
  auto code = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_multisense_text(in);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::io;
  };
  CHECK(code("check 2\n1 0 0\n0 1 0\n") == ErrorCode::arity);
  CHECK(code("check 0\n1 0 0\n") == ErrorCode::parse);
  CHECK(code("check 1\n1 0 0\n0 1\n") == ErrorCode::arity);
  CHECK(code("check 1\n1 0 0\n0 0 0\n") == ErrorCode::zero_vector);
  CHECK(code("") == ErrorCode::empty_vocabulary);
}

TEST_CASE("multi-sense 10 x K=2 x d=8 round trip") {
  testing::Rng rng(12);
  std::ostringstream text;
  std::vector<std::vector<Vector>> expected;
  for (int w = 0; w < 10; ++w) {
    text << "word" << w << " 2\n";
    auto& rows = expected.emplace_back();
    for (int r = 0; r < 3; ++r) {
      Vector v = rng.gaussian(8);
      for (std::size_t i = 0; i < v.size(); ++i) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%s%.10g", i ? " " : "", v[i]);
        text << buf;
        v[i] = std::strtod(buf + (i ? 1 : 0), nullptr);
      }
      text << '\n';
      rows.push_back(v);
    }
  }
  std::istringstream in(text.str());
  auto loaded = read_multisense_text(in);
  std::ostringstream out;
  write_multisense_text(out, loaded.store);
  std::istringstream in2(out.str());
  auto again = read_multisense_text(in2);
  for (int w = 0; w < 10; ++w) {
    std::string word = "word" + std::to_string(w);
    for (const auto* s : {&loaded.store, &again.store}) {
      auto g = s->globals().lookup(word);
      REQUIRE(g);
      CHECK(Vector(g->begin(), g->end()) == expected[w][0]);
      auto* senses = s->senses(word);
      REQUIRE(senses);
      REQUIRE(senses->size() == 2);
      CHECK((*senses)[0] == expected[w][1]);
      CHECK((*senses)[1] == expected[w][2]);
    }
  }
}

TEST_CASE("file loaders report missing files") {
  try {
    load_word2vec_text("/nonexistent/file.vec");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
}
