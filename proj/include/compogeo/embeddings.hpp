#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "compogeo/text.hpp"

namespace compogeo {

using Vector = std::vector<double>;

/// Word -> dense vector map of fixed dimension. Keys are normalized with the
/// store's CaseFolding policy both on insertion and on lookup, so a store
/// built with the default lowercase policy answers "Cat" with the vector
/// stored under "cat".
class EmbeddingStore {
 public:
  explicit EmbeddingStore(std::size_t dim, CaseFolding folding = CaseFolding::lowercase);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }
  CaseFolding folding() const noexcept { return folding_; }

  std::optional<std::span<const double>> lookup(std::string_view word) const;
  std::optional<std::size_t> index_of(std::string_view word) const;
  bool contains(std::string_view word) const { return lookup(word).has_value(); }

  /// Normalized words in first-insertion order.
  const std::vector<std::string>& words() const noexcept { return words_; }
  std::span<const double> vector_at(std::size_t index) const;

  /// Inserts or replaces. Returns true when an existing entry was replaced.
  /// Throws dimension_mismatch or zero_vector.
  bool insert(std::string_view word, std::span<const double> v);

 private:
  std::size_t dim_;
  CaseFolding folding_;
  std::vector<std::string> words_;
  std::vector<double> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Per word: one global vector plus K >= 1 sense vectors, all of one
/// dimension. The globals form an ordinary EmbeddingStore used for contexts.
class MultiSenseStore {
 public:
  explicit MultiSenseStore(std::size_t dim, CaseFolding folding = CaseFolding::lowercase);

  std::size_t dim() const noexcept { return globals_.dim(); }
  std::size_t size() const noexcept { return globals_.size(); }
  CaseFolding folding() const noexcept { return globals_.folding(); }

  const EmbeddingStore& globals() const noexcept { return globals_; }
  const std::vector<Vector>* senses(std::string_view word) const;

  bool insert(std::string_view word, std::span<const double> global, std::vector<Vector> senses);

 private:
  EmbeddingStore globals_;
  std::vector<std::vector<Vector>> senses_;
};

template <typename Store>
struct Loaded {
  Store store;
  std::size_t duplicates = 0;
};

Loaded<EmbeddingStore> load_word2vec_text(const std::string& path,
                                          CaseFolding folding = CaseFolding::lowercase);
Loaded<EmbeddingStore> read_word2vec_text(std::istream& in,
                                          CaseFolding folding = CaseFolding::lowercase);
void write_word2vec_text(std::ostream& out, const EmbeddingStore& store);
void save_word2vec_text(const std::string& path, const EmbeddingStore& store);

Loaded<MultiSenseStore> load_multisense_text(const std::string& path,
                                             CaseFolding folding = CaseFolding::lowercase);
Loaded<MultiSenseStore> read_multisense_text(std::istream& in,
                                             CaseFolding folding = CaseFolding::lowercase);
void write_multisense_text(std::ostream& out, const MultiSenseStore& store);
void save_multisense_text(const std::string& path, const MultiSenseStore& store);

}  // namespace compogeo
