#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "compogeo/label.hpp"

namespace compogeo {

/// Confusion counts and the ratios derived from them. A ratio whose
/// denominator is zero is reported as 0 with its `*_undefined` flag set.
struct Metrics {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f1_undefined = false;

  std::size_t count() const noexcept { return tp + fp + tn + fn; }
};

Metrics compute_metrics(std::span<const Label> predicted, std::span<const Label> gold, Label positive);

/// k disjoint folds covering 0..n-1, sizes differing by at most one. The
/// shuffle depends only on `seed` (mt19937_64 with a portable bounded draw),
/// so folds are identical across platforms. Indices within a fold ascend.
std::vector<std::vector<std::size_t>> kfold(std::size_t n, std::size_t k, std::uint64_t seed);

/// Uniform integer in [0, bound) from a 64-bit engine, by rejection.
template <typename Engine>
std::uint64_t bounded_draw(Engine& engine, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t r = engine();
    if (r < limit) return r % bound;
  }
}

/// "85.6" for 0.856: percent with one decimal.
std::string format_percent(double fraction);

/// Counts per score bin over [0, 1]; the top bin is closed.
std::vector<std::size_t> histogram(std::span<const double> scores, std::size_t bins);

}  // namespace compogeo
