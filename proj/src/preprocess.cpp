#include "compogeo/preprocess.hpp"

#include <fstream>

#include "compogeo/error.hpp"

namespace compogeo {

namespace {

// Decodes one code point starting at `i`, advancing `i`. Malformed bytes
// decode as themselves so that tokenization never fails.
char32_t decode(std::string_view s, std::size_t& i) {
  auto b0 = static_cast<unsigned char>(s[i]);
  std::size_t len = b0 < 0x80 ? 1 : (b0 & 0xE0) == 0xC0 ? 2 : (b0 & 0xF0) == 0xE0 ? 3
                                  : (b0 & 0xF8) == 0xF0 ? 4 : 1;
  if (len == 1 || i + len > s.size()) {
    ++i;
    return b0;
  }
  char32_t cp = b0 & (0xFF >> (len + 1));
  for (std::size_t k = 1; k < len; ++k) {
    auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return b0;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z') || (cp >= U'0' && cp <= U'9');
  }
  if (cp <= 0xBF || cp == 0xD7 || cp == 0xF7) return false;
  if (cp >= 0x2000 && cp <= 0x206F) return false;
  if (cp >= 0x3000 && cp <= 0x303F) return false;
  if ((cp >= 0xFF00 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
      (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65)) {
    return false;
  }
  return true;
}

bool is_space(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\f' || cp == U'\v' ||
         cp == 0xA0 || cp == 0x3000;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, TokenizeMode mode, CaseFolding folding) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  std::size_t start = std::string_view::npos;
  auto flush = [&](std::size_t end) {
    if (start != std::string_view::npos && end > start) {
      tokens.push_back(normalize(text.substr(start, end - start), folding));
    }
    start = std::string_view::npos;
  };
  while (i < text.size()) {
    std::size_t at = i;
    char32_t cp = decode(text, i);
    bool inside = mode == TokenizeMode::words ? is_word_char(cp) : !is_space(cp);
    if (inside) {
      if (start == std::string_view::npos) start = at;
    } else {
      flush(at);
    }
  }
  flush(text.size());
  return tokens;
}

void Sentence::validate() const {
  if (!(target.lo < target.hi && target.hi <= tokens.size())) {
    throw Error(ErrorCode::invalid_argument,
                "target span [" + std::to_string(target.lo) + ", " + std::to_string(target.hi) +
                    ") is invalid for " + std::to_string(tokens.size()) + " tokens");
  }
  if (!annotations.empty() && annotations.size() != tokens.size()) {
    throw Error(ErrorCode::invalid_argument, "annotation count " +
                                                 std::to_string(annotations.size()) +
                                                 " differs from token count " +
                                                 std::to_string(tokens.size()));
  }
}

StopwordPolicy::StopwordPolicy(std::string language, const std::vector<std::string>& words)
    : language_(std::move(language)) {
  for (const auto& w : words) words_.insert(fold_case(w));
  if (words_.empty()) throw Error(ErrorCode::invalid_argument, "stopword list is empty");
}

StopwordPolicy StopwordPolicy::load(const std::string& path, std::string language) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open stopword file '" + path + "'");
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    words.emplace_back(t);
  }
  return StopwordPolicy(std::move(language), words);
}

bool StopwordPolicy::contains(std::string_view token) const {
  return words_.count(fold_case(token)) > 0;
}

Context extract_context(std::span<const std::string> tokens, TokenSpan masked,
                        const StopwordPolicy& stop, const EmbeddingStore& store) {
  Context ctx;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (masked.contains(i)) continue;
    if (stop.contains(tokens[i])) {
      ++ctx.stopwords;
      continue;
    }
    auto v = store.lookup(tokens[i]);
    if (!v) {
      ++ctx.out_of_vocabulary;
      continue;
    }
    ctx.vectors.emplace_back(v->begin(), v->end());
    ctx.positions.push_back(i);
  }
  if (ctx.vectors.empty()) {
    throw Error(ErrorCode::empty_context, "no in-vocabulary content words outside the target");
  }
  return ctx;
}

std::size_t count_content_words(std::span<const std::string> tokens, const StopwordPolicy& stop) {
  std::size_t n = 0;
  for (const auto& t : tokens) {
    if (!stop.contains(t)) ++n;
  }
  return n;
}

}  // namespace compogeo
