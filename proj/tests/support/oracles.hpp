// Independent reference computations and seeded generators for the tests.
// Nothing here calls the library's lattice operations on the objects being
// checked; values are rebuilt from index loops, brute force and hand-coded
// formulas.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "vlat/random.hpp"
#include "vlat/regular_op.hpp"

namespace vlat::testing {

using Q = Rational;
using MatQ = RegularOperator<Rational>;
using VecQ = LatticeVector<Rational>;

inline MatQ random_matrix(SeededRng& rng, std::size_t rows, std::size_t cols, std::int64_t lo = -5,
                          std::int64_t hi = 5, std::int64_t max_den = 8) {
  MatQ m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.rational(lo, hi, max_den);
  return m;
}

inline MatQ random_positive_matrix(SeededRng& rng, std::size_t rows, std::size_t cols) {
  return random_matrix(rng, rows, cols, 0, 5, 8);
}

inline VecQ random_positive_vector(SeededRng& rng, std::size_t dim) {
  VecQ v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto den = rng.between(1, 8);
    v[i] = Q(static_cast<long>(rng.between(1, 5 * den)), static_cast<unsigned long>(den));
    v[i].canonicalize();
  }
  return v;
}

inline RegularOperator<double> random_double_matrix(SeededRng& rng, std::size_t rows, std::size_t cols,
                                                    double lo = -1.0, double hi = 1.0) {
  RegularOperator<double> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.uniform(lo, hi);
  return m;
}

/// num/den in lowest terms.
inline Q frac(long num, long den) {
  Q q(num, den);
  q.canonicalize();
  return q;
}

/// |x| entry by entry, written without the library helpers.
inline Q qabs(const Q& x) { return x < 0 ? Q(-x) : x; }

/// rep of T ↦ A T B from the definition: entry ((c, d), (i, j)) with output
/// index c + z·d (column-major) and input index i + y·j is A(c, i)·B(j, d).
inline MatQ superop_rep_by_indices(const MatQ& a, const MatQ& b) {
  const std::size_t z = a.rows(), y = a.cols(), x = b.rows(), w = b.cols();
  MatQ rep(z * w, y * x);
  for (std::size_t c = 0; c < z; ++c)
    for (std::size_t d = 0; d < w; ++d)
      for (std::size_t i = 0; i < y; ++i)
        for (std::size_t j = 0; j < x; ++j) rep(c + z * d, i + y * j) = a(c, i) * b(j, d);
  return rep;
}

/// Plain triple loop product.
inline MatQ product(const MatQ& a, const MatQ& b) {
  MatQ out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Q s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  return out;
}

inline VecQ times(const MatQ& a, const VecQ& v) {
  VecQ out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  return out;
}

/// Bell numbers by the triangle recurrence.
inline std::uint64_t bell(std::size_t n) {
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

/// Number of set partitions of n elements into at most k blocks (Stirling
/// numbers of the second kind summed).
inline std::uint64_t partitions_at_most(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::uint64_t>> s(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  s[0][0] = 1;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= i; ++j) s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
  std::uint64_t total = 0;
  for (std::size_t j = 0; j <= std::min(n, k); ++j) total += s[n][j];
  return total;
}

/// Best value of Σ_i |B w_i| over two-piece splits w = u + (w − u), with u
/// ranging over a grid of fractions of each coordinate. Never exceeds |B|·w.
inline VecQ two_piece_grid_sup(const MatQ& b, const VecQ& w, int steps) {
  const std::size_t n = w.dim();
  VecQ best(b.rows());
  for (std::size_t r = 0; r < b.rows(); ++r) best[r] = -1000000;
  std::vector<int> idx(n, 0);
  while (true) {
    VecQ u(n), v(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = w[i] * frac(static_cast<long>(idx[i]), static_cast<long>(steps));
      v[i] = w[i] - u[i];
    }
    const VecQ bu = times(b, u), bv = times(b, v);
    for (std::size_t r = 0; r < b.rows(); ++r) best[r] = std::max(best[r], Q(qabs(bu[r]) + qabs(bv[r])));
    std::size_t i = 0;
    while (i < n && idx[i] == steps) idx[i++] = 0;
    if (i == n) break;
    ++idx[i];
  }
  return best;
}

/// ‖A‖ for unweighted ℓ¹ → ℓ¹ by maximizing over the vertices ±e_j of the
/// unit ball.
inline double l1_norm_by_vertices(const RegularOperator<double>& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (double sign : {1.0, -1.0}) {
      double s = 0.0;
      for (std::size_t i = 0; i < a.rows(); ++i) s += std::fabs(sign * a(i, j));
      best = std::max(best, s);
    }
  }
  return best;
}

/// ‖A‖ for ℓ^∞ → ℓ^∞ as the largest absolute row sum, obtained by
/// maximizing ‖A s‖_∞ over all sign vectors s (vertices of the cube).
inline double linf_norm_by_vertices(const RegularOperator<double>& a) {
  double best = 0.0;
  const std::size_t n = a.cols();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a(i, j) * ((mask >> j & 1U) ? -1.0 : 1.0);
      best = std::max(best, std::fabs(s));
    }
  }
  return best;
}

/// Largest singular value by power iteration on AᵀA, long enough to be
/// accurate for the small matrices used here.
inline double spectral_norm_by_power(const RegularOperator<double>& a) {
  std::vector<double> v(a.cols(), 1.0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += 0.01 * static_cast<double>(i);
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    std::vector<double> av(a.rows(), 0.0), atav(a.cols(), 0.0);
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) av[r] += a(r, c) * v[c];
    for (std::size_t c = 0; c < a.cols(); ++c)
      for (std::size_t r = 0; r < a.rows(); ++r) atav[c] += a(r, c) * av[r];
    double norm = 0.0;
    for (double x : atav) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    for (std::size_t c = 0; c < v.size(); ++c) v[c] = atav[c] / norm;
    lambda = norm;
  }
  return std::sqrt(lambda);
}

}  // namespace vlat::testing
