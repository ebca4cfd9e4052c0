#include "compogeo/geometry.hpp"

#include <algorithm>
#include <cfloat>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>

#include "compogeo/error.hpp"

namespace compogeo {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::dimension_mismatch, "dot product of vectors with lengths " +
                                                   std::to_string(a.size()) + " and " +
                                                   std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double cosine(std::span<const double> a, std::span<const double> b) {
  double na = norm(a);
  double nb = norm(b);
  if (na == 0.0 || nb == 0.0) throw Error(ErrorCode::zero_norm, "cosine of a zero vector");
  return dot(a, b) / (na * nb);
}

namespace {

constexpr int kMaxSweeps = 100;

void canonicalize_sign(Vector& v) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
  }
  if (v[arg] < 0.0) {
    for (auto& x : v) x = -x;
  }
}

}  // namespace

// One-sided (Hestenes) Jacobi: rotate column pairs of X until all columns are
// mutually orthogonal. The rotated columns are then U * Sigma.
SingularSystem left_singular_system(std::span<const Vector> columns) {
  const std::size_t n = columns.size();
  if (n == 0) throw Error(ErrorCode::empty_context, "no vectors to decompose");
  const std::size_t d = columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != d) throw Error(ErrorCode::dimension_mismatch, "columns differ in length");
  }

  std::vector<Vector> a(columns.begin(), columns.end());
  double frobenius_sq = 0.0;
  for (const auto& c : a) frobenius_sq += dot(c, c);
  const double negligible_sq = frobenius_sq * DBL_EPSILON * DBL_EPSILON;
  const double tol = 10.0 * static_cast<double>(d) * DBL_EPSILON;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        auto& ap = a[p];
        auto& aq = a[q];
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
          alpha += ap[i] * ap[i];
          beta += aq[i] * aq[i];
          gamma += ap[i] * aq[i];
        }
        if (alpha <= negligible_sq || beta <= negligible_sq) continue;
        if (std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        double zeta = (beta - alpha) / (2.0 * gamma);
        double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (std::size_t i = 0; i < d; ++i) {
          double x = ap[i];
          double y = aq[i];
          ap[i] = c * x - s * y;
          aq[i] = s * x + c * y;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = norm(a[j]);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SingularSystem out;
  out.values.resize(n, 0.0);
  const double sigma_max = norms[order[0]];
  const double rank_tol = sigma_max * static_cast<double>(std::max(d, n)) * DBL_EPSILON * 8.0;
  const std::size_t max_rank = std::min(d, n);
  for (std::size_t r = 0; r < n; ++r) {
    double sigma = norms[order[r]];
    if (r >= max_rank || sigma <= rank_tol) break;
    out.values[r] = sigma;
    Vector u = a[order[r]];
    for (auto& x : u) x /= sigma;
    canonicalize_sign(u);
    out.left.push_back(std::move(u));
  }
  return out;
}

Subspace::Subspace(std::size_t dim, std::vector<Vector> basis, std::vector<double> spectrum)
    : dim_(dim), basis_(std::move(basis)), spectrum_(std::move(spectrum)) {
  if (basis_.empty()) throw Error(ErrorCode::invalid_argument, "subspace needs at least one direction");
  for (const auto& b : basis_) {
    if (b.size() != dim_) throw Error(ErrorCode::dimension_mismatch, "basis vector has wrong length");
  }
}

std::size_t choose_rank(std::span<const double> spectrum, double variance_ratio) {
  if (!(variance_ratio > 0.0 && variance_ratio <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "variance ratio must lie in (0, 1]");
  }
  if (spectrum.empty()) throw Error(ErrorCode::invalid_argument, "empty spectrum");
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    if (!(spectrum[i] >= 0.0)) throw Error(ErrorCode::invalid_argument, "negative singular value");
    if (i > 0 && spectrum[i] > spectrum[i - 1]) {
      throw Error(ErrorCode::invalid_argument, "spectrum is not sorted descending");
    }
  }
  if (spectrum[0] == 0.0) throw Error(ErrorCode::degenerate_context, "all-zero spectrum");

  std::size_t positive = 0;
  while (positive < spectrum.size() && spectrum[positive] > 0.0) ++positive;
  if (variance_ratio >= 1.0) return positive;

  double total = 0.0;
  for (double s : spectrum) total += s * s;
  double cumulative = 0.0;
  for (std::size_t m = 1; m <= positive; ++m) {
    cumulative += spectrum[m - 1] * spectrum[m - 1];
    if (cumulative / total >= variance_ratio) return m;
  }
  return positive;
}

Subspace principal_subspace(std::span<const Vector> columns, const PcaOptions& options) {
  if (columns.empty()) throw Error(ErrorCode::empty_context, "context has no vectors");
  const std::size_t d = columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != d) throw Error(ErrorCode::dimension_mismatch, "context vectors differ in length");
  }

  std::vector<Vector> x(columns.begin(), columns.end());
  if (options.center) {
    Vector mean(d, 0.0);
    for (const auto& c : x) {
      for (std::size_t i = 0; i < d; ++i) mean[i] += c[i];
    }
    for (auto& m : mean) m /= static_cast<double>(x.size());
    for (auto& c : x) {
      for (std::size_t i = 0; i < d; ++i) c[i] -= mean[i];
    }
  }
  bool all_zero = std::all_of(x.begin(), x.end(), [](const Vector& c) {
    return std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; });
  });
  if (all_zero) throw Error(ErrorCode::degenerate_context, "all context vectors are zero");

  auto svd = left_singular_system(x);
  std::size_t m = choose_rank(svd.values, options.variance_ratio);
  svd.left.resize(m);
  return Subspace(d, std::move(svd.left), std::move(svd.values));
}

Vector project(std::span<const double> v, const Subspace& s) {
  if (v.size() != s.dim()) {
    throw Error(ErrorCode::dimension_mismatch, "vector length " + std::to_string(v.size()) +
                                                   " differs from subspace dimension " +
                                                   std::to_string(s.dim()));
  }
  Vector out(s.dim(), 0.0);
  for (const auto& b : s.basis()) {
    double coef = dot(v, b);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += coef * b[i];
  }
  return out;
}

double projection_cosine(std::span<const double> v, const Subspace& s) {
  double nv = norm(v);
  if (nv == 0.0) throw Error(ErrorCode::zero_norm, "cannot score a zero vector");
  if (v.size() != s.dim()) throw Error(ErrorCode::dimension_mismatch, "vector/subspace dimension mismatch");
  double sq = 0.0;
  for (const auto& b : s.basis()) {
    double coef = dot(v, b);
    sq += coef * coef;
  }
  return std::clamp(std::sqrt(sq) / nv, 0.0, 1.0);
}

void write_subspace(std::ostream& out, const Subspace& s) {
  char buf[32];
  auto put = [&](double x) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    out.write(buf, ptr - buf);
  };
  out << "subspace " << s.dim() << ' ' << s.rank() << '\n' << "spectrum";
  for (double x : s.spectrum()) {
    out << ' ';
    put(x);
  }
  out << '\n';
  for (const auto& b : s.basis()) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) out << ' ';
      put(b[i]);
    }
    out << '\n';
  }
}

}  // namespace compogeo
