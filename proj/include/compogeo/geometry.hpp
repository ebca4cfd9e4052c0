#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "compogeo/embeddings.hpp"

namespace compogeo {

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);
/// Plain cosine; throws zero_norm if either vector is zero.
double cosine(std::span<const double> a, std::span<const double> b);

/// Left singular system of the d x n matrix whose columns are `columns`.
/// `values` holds all n singular values in descending order (entries below
/// the numerical rank tolerance are exactly zero); `left` holds one unit
/// d-vector per strictly positive value, in the same order.
struct SingularSystem {
  std::vector<double> values;
  std::vector<Vector> left;
};

SingularSystem left_singular_system(std::span<const Vector> columns);

/// Orthonormal basis of m principal directions in d dimensions, plus the
/// spectrum it was selected from. Basis vectors have their largest-magnitude
/// coordinate positive.
class Subspace {
 public:
  Subspace(std::size_t dim, std::vector<Vector> basis, std::vector<double> spectrum);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  const std::vector<Vector>& basis() const noexcept { return basis_; }
  const std::vector<double>& spectrum() const noexcept { return spectrum_; }

 private:
  std::size_t dim_;
  std::vector<Vector> basis_;
  std::vector<double> spectrum_;
};

/// Smallest m with sum_{i<=m} s_i^2 / sum s_i^2 >= variance_ratio. A ratio of
/// exactly 1 keeps every strictly positive value.
std::size_t choose_rank(std::span<const double> spectrum, double variance_ratio);

struct PcaOptions {
  double variance_ratio = 0.6;
  // Subtract the column mean before decomposing. Off by default: the
  // subspace is a span through the origin.
  bool center = false;
};

Subspace principal_subspace(std::span<const Vector> columns, const PcaOptions& options);

inline Subspace principal_subspace(std::span<const Vector> columns, double variance_ratio) {
  return principal_subspace(columns, PcaOptions{variance_ratio, false});
}

Vector project(std::span<const double> v, const Subspace& s);

/// ||project(v, s)|| / ||v||, clamped to [0, 1].
double projection_cosine(std::span<const double> v, const Subspace& s);

/// Debug dump: "subspace <dim> <m>", "spectrum <s_1> ... <s_n>", then one
/// basis vector per line.
void write_subspace(std::ostream& out, const Subspace& s);

}  // namespace compogeo
