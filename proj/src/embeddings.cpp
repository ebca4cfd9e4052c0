#include "compogeo/embeddings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "compogeo/error.hpp"

namespace compogeo {

EmbeddingStore::EmbeddingStore(std::size_t dim, CaseFolding folding)
    : dim_(dim), folding_(folding) {
  if (dim == 0) throw Error(ErrorCode::invalid_argument, "embedding dimension must be positive");
}

std::optional<std::size_t> EmbeddingStore::index_of(std::string_view word) const {
  auto it = index_.find(normalize(word, folding_));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::span<const double>> EmbeddingStore::lookup(std::string_view word) const {
  auto idx = index_of(word);
  if (!idx) return std::nullopt;
  return vector_at(*idx);
}

std::span<const double> EmbeddingStore::vector_at(std::size_t index) const {
  return std::span<const double>(data_).subspan(index * dim_, dim_);
}

bool EmbeddingStore::insert(std::string_view word, std::span<const double> v) {
  if (v.size() != dim_) {
    throw Error(ErrorCode::dimension_mismatch, "vector for '" + std::string(word) + "' has length " +
                                                   std::to_string(v.size()) + ", expected " +
                                                   std::to_string(dim_));
  }
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
    throw Error(ErrorCode::zero_vector, "all-zero vector for '" + std::string(word) + "'");
  }
  auto key = normalize(word, folding_);
  if (auto it = index_.find(key); it != index_.end()) {
    std::copy(v.begin(), v.end(), data_.begin() + static_cast<std::ptrdiff_t>(it->second * dim_));
    return true;
  }
  index_.emplace(key, words_.size());
  words_.push_back(std::move(key));
  data_.insert(data_.end(), v.begin(), v.end());
  return false;
}

MultiSenseStore::MultiSenseStore(std::size_t dim, CaseFolding folding) : globals_(dim, folding) {}

const std::vector<Vector>* MultiSenseStore::senses(std::string_view word) const {
  auto idx = globals_.index_of(word);
  if (!idx) return nullptr;
  return &senses_[*idx];
}

bool MultiSenseStore::insert(std::string_view word, std::span<const double> global,
                             std::vector<Vector> senses) {
  if (senses.empty()) {
    throw Error(ErrorCode::invalid_argument, "word '" + std::string(word) + "' has no senses");
  }
  for (const auto& s : senses) {
    if (s.size() != dim()) {
      throw Error(ErrorCode::dimension_mismatch,
                  "sense vector for '" + std::string(word) + "' has wrong length");
    }
    if (std::all_of(s.begin(), s.end(), [](double x) { return x == 0.0; })) {
      throw Error(ErrorCode::zero_vector, "all-zero sense vector for '" + std::string(word) + "'");
    }
  }
  bool replaced = globals_.insert(word, global);
  auto idx = *globals_.index_of(word);
  if (replaced) {
    senses_[idx] = std::move(senses);
  } else {
    senses_.push_back(std::move(senses));
  }
  return replaced;
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  // Skips blank lines; returns false at end of input.
  bool next_nonblank(std::string& line) {
    while (next(line)) {
      if (!trim(line).empty()) return true;
    }
    return false;
  }

  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

double parse_double(std::string_view field, std::size_t line) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw Error(ErrorCode::non_numeric, "non-numeric field '" + std::string(field) + "'", line);
  }
  return value;
}

std::size_t parse_count(std::string_view field, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::parse, std::string("malformed ") + what + " '" + std::string(field) + "'",
                line);
  }
  return value;
}

Vector parse_values(std::span<const std::string_view> fields, std::size_t line) {
  Vector v;
  v.reserve(fields.size());
  for (auto f : fields) v.push_back(parse_double(f, line));
  return v;
}

void require_nonzero(const Vector& v, std::size_t line) {
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
    throw Error(ErrorCode::zero_vector, "all-zero vector", line);
  }
}

void write_values(std::ostream& out, std::span<const double> v) {
  char buf[32];
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v[i]);
    if (i) out.put(' ');
    out.write(buf, ptr - buf);
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write '" + path + "'");
  return out;
}

}  // namespace

Loaded<EmbeddingStore> read_word2vec_text(std::istream& in, CaseFolding folding) {
  LineReader reader(in);
  std::string line;
  if (!reader.next_nonblank(line)) {
    throw Error(ErrorCode::empty_vocabulary, "empty embedding file");
  }
  auto header = split_fields(line);
  if (header.size() != 2) {
    throw Error(ErrorCode::parse, "header must be '<count> <dim>'", reader.number());
  }
  std::size_t count = parse_count(header[0], reader.number(), "vocabulary count");
  std::size_t dim = parse_count(header[1], reader.number(), "dimension");
  if (dim == 0) throw Error(ErrorCode::parse, "dimension must be positive", reader.number());
  if (count == 0) throw Error(ErrorCode::empty_vocabulary, "vocabulary count is zero", reader.number());

  Loaded<EmbeddingStore> result{EmbeddingStore(dim, folding), 0};
  std::size_t rows = 0;
  while (reader.next_nonblank(line)) {
    auto fields = split_fields(line);
    if (fields.size() != dim + 1) {
      throw Error(ErrorCode::arity,
                  "expected word and " + std::to_string(dim) + " values, found " +
                      std::to_string(fields.size()) + " fields",
                  reader.number());
    }
    if (rows == count) {
      throw Error(ErrorCode::parse, "more rows than the declared count " + std::to_string(count),
                  reader.number());
    }
    Vector v = parse_values(std::span(fields).subspan(1), reader.number());
    require_nonzero(v, reader.number());
    if (result.store.insert(fields[0], v)) ++result.duplicates;
    ++rows;
  }
  if (rows != count) {
    throw Error(ErrorCode::parse, "declared " + std::to_string(count) + " rows, found " +
                                      std::to_string(rows));
  }
  return result;
}

Loaded<EmbeddingStore> load_word2vec_text(const std::string& path, CaseFolding folding) {
  auto in = open_input(path);
  return read_word2vec_text(in, folding);
}

void write_word2vec_text(std::ostream& out, const EmbeddingStore& store) {
  out << store.size() << ' ' << store.dim() << '\n';
  for (std::size_t i = 0; i < store.size(); ++i) {
    out << store.words()[i] << ' ';
    write_values(out, store.vector_at(i));
    out << '\n';
  }
}

void save_word2vec_text(const std::string& path, const EmbeddingStore& store) {
  auto out = open_output(path);
  write_word2vec_text(out, store);
}

Loaded<MultiSenseStore> read_multisense_text(std::istream& in, CaseFolding folding) {
  LineReader reader(in);
  std::string line;
  std::optional<Loaded<MultiSenseStore>> result;
  std::size_t dim = 0;

  auto read_vector = [&](const std::string& word) {
    if (!reader.next_nonblank(line)) {
      throw Error(ErrorCode::arity, "unexpected end of file inside entry '" + word + "'",
                  reader.number() + 1);
    }
    auto fields = split_fields(line);
    if (dim == 0) {
      dim = fields.size();
    } else if (fields.size() != dim) {
      throw Error(ErrorCode::arity,
                  "expected " + std::to_string(dim) + " values, found " + std::to_string(fields.size()),
                  reader.number());
    }
    Vector v = parse_values(fields, reader.number());
    require_nonzero(v, reader.number());
    return v;
  };

  while (reader.next_nonblank(line)) {
    auto header = split_fields(line);
    if (header.size() != 2) {
      throw Error(ErrorCode::arity, "entry header must be '<word> <K>'", reader.number());
    }
    std::string word(header[0]);
    std::size_t k = parse_count(header[1], reader.number(), "sense count");
    if (k == 0) throw Error(ErrorCode::parse, "sense count must be positive", reader.number());
    Vector global = read_vector(word);
    std::vector<Vector> senses;
    senses.reserve(k);
    for (std::size_t s = 0; s < k; ++s) senses.push_back(read_vector(word));
    if (!result) result.emplace(Loaded<MultiSenseStore>{MultiSenseStore(dim, folding), 0});
    if (result->store.insert(word, global, std::move(senses))) ++result->duplicates;
  }
  if (!result) throw Error(ErrorCode::empty_vocabulary, "empty multi-sense file");
  return std::move(*result);
}

Loaded<MultiSenseStore> load_multisense_text(const std::string& path, CaseFolding folding) {
  auto in = open_input(path);
  return read_multisense_text(in, folding);
}

void write_multisense_text(std::ostream& out, const MultiSenseStore& store) {
  const auto& globals = store.globals();
  for (std::size_t i = 0; i < globals.size(); ++i) {
    const auto& word = globals.words()[i];
    const auto& senses = *store.senses(word);
    out << word << ' ' << senses.size() << '\n';
    write_values(out, globals.vector_at(i));
    out << '\n';
    for (const auto& s : senses) {
      write_values(out, s);
      out << '\n';
    }
  }
}

void save_multisense_text(const std::string& path, const MultiSenseStore& store) {
  auto out = open_output(path);
  write_multisense_text(out, store);
}

}  // namespace compogeo
