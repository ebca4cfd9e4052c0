#pragma once

// Shared test helpers: seeded random data and an independent dense SVD
// (Eigen) used as the oracle for the library's Jacobi decomposition.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "compogeo/embeddings.hpp"
#include "compogeo/geometry.hpp"

namespace testing {

using compogeo::Vector;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  std::size_t index(std::size_t lo, std::size_t hi) {  // inclusive
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  Vector gaussian(std::size_t d) {
    Vector v(d);
    for (auto& x : v) x = normal();
    return v;
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline Eigen::MatrixXd to_matrix(std::span<const Vector> columns) {
  Eigen::MatrixXd x(columns.front().size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    for (std::size_t i = 0; i < columns[j].size(); ++i) x(i, j) = columns[j][i];
  }
  return x;
}

inline Eigen::MatrixXd basis_matrix(const compogeo::Subspace& s) {
  return to_matrix(s.basis());
}

inline Eigen::VectorXd to_eigen(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline Vector from_eigen(const Eigen::VectorXd& v) { return Vector(v.data(), v.data() + v.size()); }

struct OracleSpan {
  Eigen::MatrixXd basis;  // d x m
  Eigen::VectorXd values;
  std::size_t m = 0;
};

// Top-m left singular vectors with m from a direct cumulative-sum search
// over the oracle's own singular values. Values below 1e-10 * max count as
// zero (matters only for ratio 1).
inline OracleSpan oracle_span(const Eigen::MatrixXd& x, double ratio) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU);
  OracleSpan out;
  out.values = svd.singularValues();
  const double tol = 1e-10 * out.values(0);
  std::size_t positive = 0;
  while (positive < static_cast<std::size_t>(out.values.size()) && out.values(positive) > tol) ++positive;
  double total = out.values.squaredNorm();
  std::size_t m = positive;
  if (ratio < 1.0) {
    double acc = 0.0;
    for (std::size_t k = 0; k < positive; ++k) {
      acc += out.values(k) * out.values(k);
      if (acc / total >= ratio) {
        m = k + 1;
        break;
      }
    }
  }
  out.m = m;
  out.basis = svd.matrixU().leftCols(static_cast<Eigen::Index>(m));
  return out;
}

// Largest principal angle (radians) between the column spans of two
// matrices with orthonormal columns and equal column counts.
inline double max_principal_angle(const Eigen::MatrixXd& q, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd residual = b - q * (q.transpose() * b);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual);
  double s = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  return std::asin(std::min(1.0, s));
}

inline Eigen::MatrixXd random_orthogonal(std::size_t d, Rng& rng) {
  Eigen::MatrixXd g(d, d);
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  // Fix column signs so Q is Haar distributed.
  Eigen::VectorXd diag = qr.matrixQR().diagonal();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    if (diag(j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

// d x n test matrix of a randomly chosen kind: gaussian, rank deficient,
// repeated columns, widely scaled columns, or with zero columns.
inline std::vector<Vector> random_columns(std::size_t d, std::size_t n, Rng& rng, int kind) {
  std::vector<Vector> cols;
  switch (kind % 5) {
    case 0:
      for (std::size_t j = 0; j < n; ++j) cols.push_back(rng.gaussian(d));
      break;
    case 1: {
      std::size_t r = rng.index(1, std::min(d, n));
      std::vector<Vector> gen;
      for (std::size_t k = 0; k < r; ++k) gen.push_back(rng.gaussian(d));
      for (std::size_t j = 0; j < n; ++j) {
        Vector c(d, 0.0);
        for (const auto& g : gen) {
          double a = rng.normal();
          for (std::size_t i = 0; i < d; ++i) c[i] += a * g[i];
        }
        cols.push_back(c);
      }
      break;
    }
    case 2: {
      std::size_t distinct = rng.index(1, n);
      for (std::size_t j = 0; j < distinct; ++j) cols.push_back(rng.gaussian(d));
      while (cols.size() < n) cols.push_back(cols[rng.index(0, distinct - 1)]);
      break;
    }
    case 3:
      for (std::size_t j = 0; j < n; ++j) {
        Vector c = rng.gaussian(d);
        double scale = std::pow(10.0, rng.uniform(-3.0, 3.0));
        for (auto& x : c) x *= scale;
        cols.push_back(c);
      }
      break;
    default:
      for (std::size_t j = 0; j < n; ++j) {
        cols.push_back(j == 0 || rng.uniform() < 0.7 ? rng.gaussian(d) : Vector(d, 0.0));
      }
      break;
  }
  return cols;
}

// Smallest nonzero gap between consecutive oracle singular values around the
// cut at m; spans are only well defined when this is not tiny.
inline double gap_at(const Eigen::VectorXd& values, std::size_t m) {
  if (m >= static_cast<std::size_t>(values.size())) return values(values.size() - 1);
  return values(static_cast<Eigen::Index>(m) - 1) - values(static_cast<Eigen::Index>(m));
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("compogeo-test-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name, const std::string& contents) const {
    auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << contents;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace testing
