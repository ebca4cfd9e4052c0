#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "compogeo/embeddings.hpp"

namespace compogeo {

enum class TokenizeMode {
  words,       // maximal runs of letters/digits; punctuation and spaces separate
  whitespace,  // pre-segmented input (e.g. Chinese): split on whitespace only
};

std::vector<std::string> tokenize(std::string_view text, TokenizeMode mode = TokenizeMode::words,
                                  CaseFolding folding = CaseFolding::lowercase);

/// Half-open token interval [lo, hi).
struct TokenSpan {
  std::size_t lo = 0;
  std::size_t hi = 0;

  std::size_t size() const noexcept { return hi - lo; }
  bool contains(std::size_t i) const noexcept { return i >= lo && i < hi; }
};

struct Sentence {
  std::vector<std::string> tokens;
  TokenSpan target;
  std::vector<std::string> annotations;  // empty, or one tag per token

  void validate() const;
};

class StopwordPolicy {
 public:
  StopwordPolicy(std::string language, const std::vector<std::string>& words);

  /// One token per line, '#' comment lines and blank lines ignored.
  static StopwordPolicy load(const std::string& path, std::string language);

  const std::string& language() const noexcept { return language_; }
  std::size_t size() const noexcept { return words_.size(); }
  bool contains(std::string_view token) const;

 private:
  std::string language_;
  std::unordered_set<std::string> words_;
};

struct Context {
  std::vector<Vector> vectors;
  std::vector<std::size_t> positions;  // token index of each vector
  std::size_t stopwords = 0;
  std::size_t out_of_vocabulary = 0;
};

/// Vectors of every token outside `masked` that is neither a stopword nor
/// missing from `store`, in sentence order. Throws empty_context when none
/// qualify.
Context extract_context(std::span<const std::string> tokens, TokenSpan masked,
                        const StopwordPolicy& stop, const EmbeddingStore& store);

inline Context extract_context(const Sentence& sentence, const StopwordPolicy& stop,
                               const EmbeddingStore& store) {
  sentence.validate();
  return extract_context(sentence.tokens, sentence.target, stop, store);
}

std::size_t count_content_words(std::span<const std::string> tokens, const StopwordPolicy& stop);

}  // namespace compogeo
