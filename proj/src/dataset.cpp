#include "compogeo/dataset.hpp"

#include <cmath>

#include "compogeo/error.hpp"
#include "json.hpp"

namespace compogeo {

using nlohmann::json;

std::optional<Label> Instance::gold(int component) const {
  if (component < 0) return label;
  auto c = static_cast<std::size_t>(component);
  if (c < component_labels.size()) return component_labels[c];
  return std::nullopt;
}

Label binarize_rating(double rating, std::string_view tag) {
  if (tag == "ENC") return rating > 2.5 ? Label::compositional : Label::non_compositional;
  if (tag == "GNC") return rating > 4.0 ? Label::compositional : Label::non_compositional;
  if (tag == "EVPC") {
    if (rating == 1.0) return Label::compositional;
    if (rating == 0.0) return Label::non_compositional;
    throw Error(ErrorCode::invalid_argument, "EVPC ratings must be 0 or 1");
  }
  throw Error(ErrorCode::unknown_tag, "no rating threshold for dataset tag '" + std::string(tag) + "'");
}

namespace {

bool rated_tag(std::string_view tag) { return tag == "ENC" || tag == "GNC" || tag == "EVPC"; }

Label label_from_string(const std::string& s, std::size_t line) {
  if (s == "compositional" || s == "literal") return Label::compositional;
  if (s == "non_compositional" || s == "non-compositional" || s == "noncompositional" ||
      s == "idiomatic" || s == "sarcastic" || s == "metaphor" || s == "metaphorical" ||
      s == "figurative") {
    return Label::non_compositional;
  }
  throw Error(ErrorCode::parse, "unknown gold label '" + s + "'", line);
}

Label parse_gold(const json& g, const std::string& tag, std::size_t line) {
  if (g.is_boolean()) return g.get<bool>() ? Label::compositional : Label::non_compositional;
  if (g.is_string()) return label_from_string(g.get<std::string>(), line);
  if (g.is_number()) {
    double v = g.get<double>();
    if (rated_tag(tag)) {
      try {
        return binarize_rating(v, tag);
      } catch (const Error& e) {
        throw Error(e.code(), e.what(), line);
      }
    }
    if (v == 1.0) return Label::compositional;
    if (v == 0.0) return Label::non_compositional;
    throw Error(ErrorCode::parse, "numeric gold must be 0 or 1 for tag '" + tag + "'", line);
  }
  throw Error(ErrorCode::parse, "gold must be a label, boolean, number or array", line);
}

std::size_t as_index(const json& j, const char* what, std::size_t line) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw Error(ErrorCode::parse, std::string(what) + " must be a nonnegative integer", line);
  }
  return j.get<std::size_t>();
}

}  // namespace

Instance parse_instance(std::string_view json_line, std::size_t line) {
  json j;
  try {
    j = json::parse(json_line);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, std::string("invalid JSON: ") + e.what(), line);
  }
  if (!j.is_object()) throw Error(ErrorCode::parse, "instance must be a JSON object", line);

  Instance inst;
  inst.line = line;
  if (auto it = j.find("tag"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw Error(ErrorCode::parse, "tag must be a string", line);
    inst.tag = it->get<std::string>();
  }

  auto tokens = j.find("tokens");
  if (tokens == j.end() || !tokens->is_array()) {
    throw Error(ErrorCode::parse, "missing token array", line);
  }
  for (const auto& t : *tokens) {
    if (!t.is_string()) throw Error(ErrorCode::parse, "tokens must be strings", line);
    inst.sentence.tokens.push_back(t.get<std::string>());
  }

  auto target = j.find("target");
  if (target == j.end() || !target->is_array() || target->size() != 2) {
    throw Error(ErrorCode::parse, "target must be [lo, hi]", line);
  }
  inst.sentence.target = {as_index((*target)[0], "target lo", line),
                          as_index((*target)[1], "target hi", line)};

  if (auto pos = j.find("pos"); pos != j.end() && !pos->is_null()) {
    if (!pos->is_array()) throw Error(ErrorCode::parse, "pos must be an array", line);
    for (const auto& p : *pos) {
      if (!p.is_string()) throw Error(ErrorCode::parse, "pos tags must be strings", line);
      inst.sentence.annotations.push_back(p.get<std::string>());
    }
  }

  try {
    inst.sentence.validate();
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), line);
  }
  const auto& span = inst.sentence.target;
  if (span.size() > 2) throw Error(ErrorCode::parse, "target phrases have one or two words", line);
  inst.phrase_words.assign(inst.sentence.tokens.begin() + static_cast<std::ptrdiff_t>(span.lo),
                           inst.sentence.tokens.begin() + static_cast<std::ptrdiff_t>(span.hi));

  if (auto roles = j.find("roles"); roles != j.end() && !roles->is_null()) {
    if (!roles->is_object()) throw Error(ErrorCode::parse, "roles must be an object", line);
    for (const auto& [name, idx] : roles->items()) {
      std::size_t i = as_index(idx, "role index", line);
      if (i >= inst.sentence.tokens.size()) {
        throw Error(ErrorCode::parse, "role '" + name + "' points past the last token", line);
      }
      inst.roles[name] = i;
    }
  }

  if (auto gold = j.find("gold"); gold != j.end() && !gold->is_null()) {
    if (gold->is_array()) {
      if (gold->empty() || gold->size() > 2) {
        throw Error(ErrorCode::parse, "component gold must have one or two entries", line);
      }
      for (const auto& g : *gold) {
        if (g.is_null()) {
          inst.component_labels.emplace_back();
        } else {
          inst.component_labels.push_back(parse_gold(g, inst.tag, line));
        }
      }
    } else {
      inst.label = parse_gold(*gold, inst.tag, line);
      if (gold->is_number()) inst.rating = gold->get<double>();
    }
  }
  return inst;
}

DatasetReader::DatasetReader(const std::string& path) : path_(path), in_(path) {
  if (!in_) throw Error(ErrorCode::io, "cannot open dataset '" + path + "'");
}

std::optional<Instance> DatasetReader::next() {
  std::string text;
  while (std::getline(in_, text)) {
    ++line_;
    if (trim(text).empty()) continue;
    return parse_instance(text, line_);
  }
  return std::nullopt;
}

std::vector<Instance> load_dataset(const std::string& path) {
  DatasetReader reader(path);
  std::vector<Instance> out;
  while (auto inst = reader.next()) out.push_back(std::move(*inst));
  return out;
}

}  // namespace compogeo
