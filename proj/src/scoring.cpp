#include "compogeo/scoring.hpp"

#include <algorithm>

#include "compogeo/error.hpp"

namespace compogeo {

void ReprConfig::validate() const {
  if (!(variance_ratio > 0.0 && variance_ratio <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "variance ratio must lie in (0, 1]");
  }
}

namespace {

Vector sum_of(std::span<const Vector> vs) {
  Vector s(vs.front().size(), 0.0);
  for (const auto& v : vs) {
    if (v.size() != s.size()) throw Error(ErrorCode::dimension_mismatch, "vectors differ in length");
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += v[i];
  }
  return s;
}

}  // namespace

Vector phrase_vector(std::span<const Vector> components, PhraseMode mode) {
  if (components.empty()) throw Error(ErrorCode::invalid_argument, "phrase has no words");
  Vector sum = sum_of(components);
  if (mode == PhraseMode::average || components.size() == 1) {
    if (norm(sum) == 0.0) throw Error(ErrorCode::zero_norm, "phrase vectors sum to zero");
    return sum;
  }
  auto svd = left_singular_system(components);
  if (svd.left.empty()) throw Error(ErrorCode::zero_norm, "phrase vectors are all zero");
  Vector first = std::move(svd.left.front());
  if (dot(first, sum) < 0.0) {
    for (auto& x : first) x = -x;
  }
  return first;
}

Vector phrase_vector(std::span<const std::string> words, const EmbeddingStore& store,
                     PhraseMode mode) {
  std::vector<Vector> components;
  components.reserve(words.size());
  for (const auto& w : words) {
    auto v = store.lookup(w);
    if (!v) throw Error(ErrorCode::out_of_vocabulary, "phrase word '" + w + "' is not in the store");
    components.emplace_back(v->begin(), v->end());
  }
  return phrase_vector(components, mode);
}

ContextRepresentation ContextRepresentation::build(std::span<const Vector> context,
                                                   ContextMode mode, double variance_ratio) {
  if (context.empty()) throw Error(ErrorCode::empty_context, "context has no vectors");
  Vector sum = sum_of(context);
  if (mode == ContextMode::average) {
    return ContextRepresentation(mode, std::nullopt, std::move(sum), context.size());
  }
  return ContextRepresentation(mode, principal_subspace(context, variance_ratio), std::move(sum),
                               context.size());
}

const Subspace& ContextRepresentation::subspace() const {
  if (!subspace_) throw Error(ErrorCode::invalid_argument, "average context has no subspace");
  return *subspace_;
}

double clamped_cosine(std::span<const double> a, std::span<const double> b) {
  return std::clamp(cosine(a, b), 0.0, 1.0);
}

ScoreReport compositionality_score(std::span<const double> phrase_v,
                                   const ContextRepresentation& context) {
  if (norm(phrase_v) == 0.0) throw Error(ErrorCode::zero_norm, "phrase vector has zero norm");
  ScoreReport report;
  report.n_context = context.n_context();
  if (context.mode() == ContextMode::pca) {
    report.score = projection_cosine(phrase_v, context.subspace());
    report.m_used = context.subspace().rank();
  } else {
    if (norm(context.sum()) == 0.0) {
      throw Error(ErrorCode::zero_norm, "context vectors sum to zero");
    }
    report.score = clamped_cosine(phrase_v, context.sum());
    report.m_used = 1;
  }
  return report;
}

ScoreReport multisense_score(std::span<const std::string> words, const MultiSenseStore& store,
                             PhraseMode mode, const ContextRepresentation& context) {
  if (words.empty()) throw Error(ErrorCode::invalid_argument, "phrase has no words");
  std::vector<const std::vector<Vector>*> senses;
  for (const auto& w : words) {
    auto s = store.senses(w);
    if (!s) throw Error(ErrorCode::out_of_vocabulary, "word '" + w + "' is not in the multi-sense store");
    senses.push_back(s);
  }

  ScoreReport best;
  std::vector<std::size_t> pick(words.size(), 0);
  std::vector<Vector> components(words.size());
  for (;;) {
    for (std::size_t i = 0; i < words.size(); ++i) components[i] = (*senses[i])[pick[i]];
    auto r = compositionality_score(phrase_vector(components, mode), context);
    if (best.per_sense.empty() || r.score > best.score) {
      best.score = r.score;
      best.m_used = r.m_used;
      best.n_context = r.n_context;
    }
    best.per_sense.push_back(r.score);

    std::size_t i = words.size();
    while (i > 0) {
      --i;
      if (++pick[i] < senses[i]->size()) break;
      pick[i] = 0;
      if (i == 0) return best;
    }
  }
}

}  // namespace compogeo
