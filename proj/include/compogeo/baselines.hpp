#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "compogeo/embeddings.hpp"
#include "compogeo/label.hpp"
#include "compogeo/preprocess.hpp"

namespace compogeo {

/// Unigram and bigram frequencies with running totals.
class CountTable {
 public:
  void add_unigram(std::string_view word, std::uint64_t count);
  void add_bigram(std::string_view w1, std::string_view w2, std::uint64_t count);

  std::uint64_t unigram(std::string_view word) const;
  std::uint64_t bigram(std::string_view w1, std::string_view w2) const;
  std::uint64_t unigram_total() const noexcept { return unigram_total_; }
  std::uint64_t bigram_total() const noexcept { return bigram_total_; }

  /// `word<TAB>count` and `w1<TAB>w2<TAB>count` files.
  static CountTable load_tsv(const std::string& unigram_path, const std::string& bigram_path);
  /// Counts tokens and adjacent token pairs line by line; intended for
  /// small fixture corpora.
  static CountTable count_text(std::istream& in, TokenizeMode mode = TokenizeMode::words);

 private:
  static std::string bigram_key(std::string_view w1, std::string_view w2);

  std::unordered_map<std::string, std::uint64_t> unigrams_;
  std::unordered_map<std::string, std::uint64_t> bigrams_;
  std::uint64_t unigram_total_ = 0;
  std::uint64_t bigram_total_ = 0;
};

/// ln( P(w1 w2) / (P(w1) P(w2)) ) with maximum-likelihood probabilities.
/// Throws zero_count naming the missing count.
double pmi(const CountTable& counts, std::string_view w1, std::string_view w2);

/// Non-compositional iff score > threshold.
Label pmi_classify(double score, double threshold);

/// max(0, cosine(target, sum of context vectors)).
double avg_context_score(std::span<const double> target_v, std::span<const Vector> context);

}  // namespace compogeo
