#include "compogeo/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>

#include "compogeo/error.hpp"

namespace compogeo {

Metrics compute_metrics(std::span<const Label> predicted, std::span<const Label> gold, Label positive) {
  if (predicted.size() != gold.size()) {
    throw Error(ErrorCode::dimension_mismatch, "prediction and gold lists differ in length");
  }
  if (predicted.empty()) throw Error(ErrorCode::invalid_argument, "no predictions to score");
  Metrics m;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    bool p = predicted[i] == positive;
    bool g = gold[i] == positive;
    if (p && g) ++m.tp;
    else if (p) ++m.fp;
    else if (g) ++m.fn;
    else ++m.tn;
  }
  m.accuracy = static_cast<double>(m.tp + m.tn) / static_cast<double>(predicted.size());
  if (m.tp + m.fp > 0) {
    m.precision = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
  } else {
    m.precision_undefined = true;
  }
  if (m.tp + m.fn > 0) {
    m.recall = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
  } else {
    m.recall_undefined = true;
  }
  if (!m.precision_undefined && !m.recall_undefined && m.precision + m.recall > 0.0) {
    m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  } else {
    m.f1_undefined = true;
  }
  return m;
}

std::vector<std::vector<std::size_t>> kfold(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::invalid_argument, "need at least two folds");
  if (k > n) {
    throw Error(ErrorCode::invalid_argument,
                "cannot split " + std::to_string(n) + " instances into " + std::to_string(k) + " folds");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 engine(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    auto j = static_cast<std::size_t>(bounded_draw(engine, i + 1));
    std::swap(order[i], order[j]);
  }
  std::vector<std::vector<std::size_t>> folds(k);
  for (std::size_t i = 0; i < n; ++i) folds[i % k].push_back(order[i]);
  for (auto& f : folds) std::sort(f.begin(), f.end());
  return folds;
}

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", fraction * 100.0);
  return buf;
}

std::vector<std::size_t> histogram(std::span<const double> scores, std::size_t bins) {
  if (bins == 0) throw Error(ErrorCode::invalid_argument, "histogram needs at least one bin");
  std::vector<std::size_t> counts(bins, 0);
  for (double s : scores) {
    auto b = static_cast<std::size_t>(std::floor(std::clamp(s, 0.0, 1.0) * static_cast<double>(bins)));
    counts[std::min(b, bins - 1)]++;
  }
  return counts;
}

}  // namespace compogeo
