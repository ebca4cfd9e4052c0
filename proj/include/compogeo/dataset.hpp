#pragma once

#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "compogeo/label.hpp"
#include "compogeo/preprocess.hpp"

namespace compogeo {

/// One labeled occurrence read from a JSONL dataset line:
///
///   {"tokens":[...], "target":[lo,hi], "pos":[...]?,
///    "roles":{"subj":i,"verb":j,"obj":k}?, "gold":..., "tag":"ENC"}
///
/// `gold` is a label string, a boolean (true = compositional), a number, or a
/// two-element array of per-component golds. Numbers are binarized through
/// the dataset tag for ENC/GNC/EVPC and must otherwise be 0 or 1
/// (1 = compositional).
struct Instance {
  Sentence sentence;
  std::vector<std::string> phrase_words;
  std::optional<Label> label;
  std::optional<double> rating;
  std::vector<std::optional<Label>> component_labels;
  std::map<std::string, std::size_t> roles;
  std::string tag;
  std::size_t line = 0;

  /// Gold for the whole phrase (component < 0) or one component.
  std::optional<Label> gold(int component = -1) const;
};

/// ENC: literal iff rating > 2.5. GNC: literal iff rating > 4. EVPC: ratings
/// are already 0/1 and pass through. Other tags throw unknown_tag.
Label binarize_rating(double rating, std::string_view tag);

Instance parse_instance(std::string_view json_line, std::size_t line = 0);

/// Streams a JSONL dataset one instance at a time; blank lines are skipped.
class DatasetReader {
 public:
  explicit DatasetReader(const std::string& path);

  std::optional<Instance> next();
  std::size_t line() const noexcept { return line_; }
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
  std::ifstream in_;
  std::size_t line_ = 0;
};

std::vector<Instance> load_dataset(const std::string& path);

}  // namespace compogeo
