#include "compogeo/baselines.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "compogeo/error.hpp"
#include "compogeo/scoring.hpp"

namespace compogeo {

std::string CountTable::bigram_key(std::string_view w1, std::string_view w2) {
  std::string key;
  key.reserve(w1.size() + w2.size() + 1);
  key.append(w1).push_back('\t');
  key.append(w2);
  return key;
}

void CountTable::add_unigram(std::string_view word, std::uint64_t count) {
  unigrams_[std::string(word)] += count;
  unigram_total_ += count;
}

void CountTable::add_bigram(std::string_view w1, std::string_view w2, std::uint64_t count) {
  bigrams_[bigram_key(w1, w2)] += count;
  bigram_total_ += count;
}

std::uint64_t CountTable::unigram(std::string_view word) const {
  auto it = unigrams_.find(std::string(word));
  return it == unigrams_.end() ? 0 : it->second;
}

std::uint64_t CountTable::bigram(std::string_view w1, std::string_view w2) const {
  auto it = bigrams_.find(bigram_key(w1, w2));
  return it == bigrams_.end() ? 0 : it->second;
}

namespace {

std::uint64_t parse_u64(std::string_view field, const std::string& path, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::parse, path + ": malformed count '" + std::string(field) + "'", line);
  }
  return v;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find('\t', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename OnFields>
void read_tsv(const std::string& path, std::size_t arity, OnFields on_fields) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open count file '" + path + "'");
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_tabs(line);
    if (fields.size() != arity) {
      throw Error(ErrorCode::arity, path + ": expected " + std::to_string(arity) + " tab-separated fields",
                  number);
    }
    on_fields(fields, number);
  }
}

}  // namespace

CountTable CountTable::load_tsv(const std::string& unigram_path, const std::string& bigram_path) {
  CountTable t;
  read_tsv(unigram_path, 2, [&](const auto& f, std::size_t line) {
    t.add_unigram(f[0], parse_u64(f[1], unigram_path, line));
  });
  read_tsv(bigram_path, 3, [&](const auto& f, std::size_t line) {
    t.add_bigram(f[0], f[1], parse_u64(f[2], bigram_path, line));
  });
  return t;
}

CountTable CountTable::count_text(std::istream& in, TokenizeMode mode) {
  CountTable t;
  std::string line;
  while (std::getline(in, line)) {
    auto tokens = tokenize(line, mode);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      t.add_unigram(tokens[i], 1);
      if (i + 1 < tokens.size()) t.add_bigram(tokens[i], tokens[i + 1], 1);
    }
  }
  return t;
}

double pmi(const CountTable& counts, std::string_view w1, std::string_view w2) {
  auto c1 = counts.unigram(w1);
  auto c2 = counts.unigram(w2);
  auto c12 = counts.bigram(w1, w2);
  if (c1 == 0) throw Error(ErrorCode::zero_count, "unigram count of '" + std::string(w1) + "' is zero");
  if (c2 == 0) throw Error(ErrorCode::zero_count, "unigram count of '" + std::string(w2) + "' is zero");
  if (c12 == 0) {
    throw Error(ErrorCode::zero_count,
                "bigram count of '" + std::string(w1) + " " + std::string(w2) + "' is zero");
  }
  const double p12 = static_cast<double>(c12) / static_cast<double>(counts.bigram_total());
  const double p1 = static_cast<double>(c1) / static_cast<double>(counts.unigram_total());
  const double p2 = static_cast<double>(c2) / static_cast<double>(counts.unigram_total());
  return std::log(p12 / (p1 * p2));
}

Label pmi_classify(double score, double threshold) {
  return score > threshold ? Label::non_compositional : Label::compositional;
}

double avg_context_score(std::span<const double> target_v, std::span<const Vector> context) {
  auto rep = ContextRepresentation::build(context, ContextMode::average, 1.0);
  if (norm(rep.sum()) == 0.0) throw Error(ErrorCode::zero_norm, "context vectors sum to zero");
  return compositionality_score(target_v, rep).score;
}

}  // namespace compogeo
