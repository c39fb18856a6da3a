#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "vlat/errors.hpp"
#include "vlat/lattice.hpp"
#include "vlat/partitions.hpp"
#include "vlat/random.hpp"

namespace vlat {

/// Dense matrix viewed as a regular operator from R^cols to R^rows, both
/// with the componentwise order. Row-major storage.
///
/// Every such operator is order continuous, so the finite model does not
/// distinguish L^r_n from L^r, and it has no nonzero singular operators.
template <Scalar S>
class RegularOperator {
 public:
  using value_type = S;

  RegularOperator(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, from_int<S>(0)) {
    check_shape();
  }

  RegularOperator(std::size_t rows, std::size_t cols, std::vector<S> row_major)
      : rows_(rows), cols_(cols), entries_(std::move(row_major)) {
    check_shape();
    if (entries_.size() != rows_ * cols_) throw DimensionMismatch("entry count does not match shape");
  }

  RegularOperator(std::initializer_list<std::initializer_list<S>> rows)
      : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    check_shape();
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      entries_.insert(entries_.end(), r.begin(), r.end());
    }
  }

  static RegularOperator zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  static RegularOperator identity(std::size_t n) {
    RegularOperator m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = from_int<S>(1);
    return m;
  }

  static RegularOperator filled(std::size_t rows, std::size_t cols, const S& value) {
    return RegularOperator(rows, cols, std::vector<S>(rows * cols, value));
  }

  /// Diagonal matrix of a band projection.
  static RegularOperator from_projection(const BandProjection& p) {
    RegularOperator m(p.dim(), p.dim());
    for (std::size_t i : p.support()) m(i, i) = from_int<S>(1);
    return m;
  }

  /// E_ij: single one at (i, j).
  static RegularOperator unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
    RegularOperator m(rows, cols);
    m.at(i, j) = from_int<S>(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }

  const S& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  S& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  const S& at(std::size_t r, std::size_t c) const {
    bounds(r, c);
    return (*this)(r, c);
  }
  S& at(std::size_t r, std::size_t c) {
    bounds(r, c);
    return (*this)(r, c);
  }

  std::span<const S> entries() const { return entries_; }

  LatticeVector<S> column(std::size_t c) const {
    LatticeVector<S> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
  }

  LatticeVector<S> row(std::size_t r) const {
    LatticeVector<S> v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
  }

  RegularOperator transpose() const {
    RegularOperator t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  RegularOperator& operator+=(const RegularOperator& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  RegularOperator& operator-=(const RegularOperator& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  RegularOperator& operator*=(const S& c) {
    for (auto& e : entries_) e *= c;
    return *this;
  }

  friend RegularOperator operator+(RegularOperator a, const RegularOperator& b) { return a += b; }
  friend RegularOperator operator-(RegularOperator a, const RegularOperator& b) { return a -= b; }
  friend RegularOperator operator*(const S& c, RegularOperator a) { return a *= c; }
  friend RegularOperator operator-(RegularOperator a) {
    for (auto& e : a.entries_) e = -e;
    return a;
  }

  friend RegularOperator operator*(const RegularOperator& a, const RegularOperator& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionMismatch("cannot compose " + a.shape_string() + " with " + b.shape_string());
    }
    RegularOperator out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const RegularOperator& a, const RegularOperator& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  std::string shape_string() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  static void require_same_shape(const RegularOperator& a, const RegularOperator& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
      throw DimensionMismatch("shape mismatch: " + a.shape_string() + " vs " + b.shape_string());
    }
  }

 private:
  void check_shape() const {
    if (rows_ == 0 || cols_ == 0) throw DimensionMismatch("operator dimensions must be positive");
  }
  void bounds(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) {
      throw IndexOutOfRange("index (" + std::to_string(r) + "," + std::to_string(c) +
                            ") outside " + shape_string());
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<S> entries_;
};

template <Scalar S, class F>
RegularOperator<S> map_entries(const RegularOperator<S>& a, F f) {
  std::vector<S> out;
  out.reserve(a.size());
  for (const auto& e : a.entries()) out.push_back(f(e));
  return RegularOperator<S>(a.rows(), a.cols(), std::move(out));
}

template <Scalar S, class F>
RegularOperator<S> zip_with(const RegularOperator<S>& a, const RegularOperator<S>& b, F f) {
  RegularOperator<S>::require_same_shape(a, b);
  std::vector<S> out;
  out.reserve(a.size());
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) out.push_back(f(ea[i], eb[i]));
  return RegularOperator<S>(a.rows(), a.cols(), std::move(out));
}

template <Scalar S>
LatticeVector<S> apply(const RegularOperator<S>& a, const LatticeVector<S>& x) {
  if (a.cols() != x.dim()) {
    throw DimensionMismatch("cannot apply " + a.shape_string() + " to a vector of dim " +
                            std::to_string(x.dim()));
  }
  LatticeVector<S> y(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    S acc = from_int<S>(0);
    for (std::size_t c = 0; c < a.cols(); ++c) acc += a(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

/// |A| in the coordinate model: the entrywise absolute value.
template <Scalar S>
RegularOperator<S> modulus_closed_form(const RegularOperator<S>& a) {
  return map_entries(a, [](const S& e) { return abs_of(e); });
}

template <Scalar S>
RegularOperator<S> pos_part(const RegularOperator<S>& a) {
  const S zero = from_int<S>(0);
  return map_entries(a, [&](const S& e) { return max_of(e, zero); });
}

template <Scalar S>
RegularOperator<S> neg_part(const RegularOperator<S>& a) {
  const S zero = from_int<S>(0);
  return map_entries(a, [&](const S& e) { return S(max_of(S(-e), zero)); });
}

template <Scalar S>
RegularOperator<S> join_closed_form(const RegularOperator<S>& a, const RegularOperator<S>& b) {
  return zip_with(a, b, [](const S& x, const S& y) { return max_of(x, y); });
}

template <Scalar S>
RegularOperator<S> meet_closed_form(const RegularOperator<S>& a, const RegularOperator<S>& b) {
  return zip_with(a, b, [](const S& x, const S& y) { return min_of(x, y); });
}

template <Scalar S>
bool is_positive(const RegularOperator<S>& a, Tolerance tol = {}) {
  const S zero = from_int<S>(0);
  for (const auto& e : a.entries()) {
    if (!approx_leq(zero, e, tol)) return false;
  }
  return true;
}

template <Scalar S>
bool is_zero(const RegularOperator<S>& a) {
  for (const auto& e : a.entries()) {
    if (!is_zero(e)) return false;
  }
  return true;
}

/// a <= b entrywise.
template <Scalar S>
bool leq(const RegularOperator<S>& a, const RegularOperator<S>& b, Tolerance tol = {}) {
  RegularOperator<S>::require_same_shape(a, b);
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (!approx_leq(ea[i], eb[i], tol)) return false;
  }
  return true;
}

template <Scalar S>
S max_abs_diff(const RegularOperator<S>& a, const RegularOperator<S>& b) {
  RegularOperator<S>::require_same_shape(a, b);
  S best = from_int<S>(0);
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    S d = abs_of(S(ea[i] - eb[i]));
    if (best < d) best = d;
  }
  return best;
}

template <Scalar S>
bool approx_equal(const RegularOperator<S>& a, const RegularOperator<S>& b, Tolerance tol = {}) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if constexpr (is_exact_v<S>) {
    return a == b;
  } else {
    return max_abs_diff(a, b) <= tol.abs;
  }
}

/// x′⊗y: the operator w ↦ ⟨x′, w⟩·y, i.e. the matrix y·x′ᵀ.
template <Scalar S>
RegularOperator<S> rank_one(const LatticeVector<S>& xprime, const LatticeVector<S>& y) {
  RegularOperator<S> m(y.dim(), xprime.dim());
  for (std::size_t r = 0; r < y.dim(); ++r)
    for (std::size_t c = 0; c < xprime.dim(); ++c) m(r, c) = y[r] * xprime[c];
  return m;
}

/// Kronecker product a ⊗ b.
template <Scalar S>
RegularOperator<S> kron(const RegularOperator<S>& a, const RegularOperator<S>& b) {
  RegularOperator<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const S& aij = a(i, j);
      if (is_zero(aij)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    }
  return out;
}

/// Column-major stacking of a matrix into a coordinate vector.
template <Scalar S>
LatticeVector<S> vec(const RegularOperator<S>& t) {
  LatticeVector<S> v(t.rows() * t.cols());
  for (std::size_t c = 0; c < t.cols(); ++c)
    for (std::size_t r = 0; r < t.rows(); ++r) v[c * t.rows() + r] = t(r, c);
  return v;
}

template <Scalar S>
RegularOperator<S> unvec(const LatticeVector<S>& v, std::size_t rows, std::size_t cols) {
  if (v.dim() != rows * cols) throw DimensionMismatch("unvec: length does not match shape");
  RegularOperator<S> t(rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t r = 0; r < rows; ++r) t(r, c) = v[c * rows + r];
  return t;
}

template <class To, Scalar From>
RegularOperator<To> convert(const RegularOperator<From>& a) {
  std::vector<To> out;
  out.reserve(a.size());
  for (const auto& e : a.entries()) {
    if constexpr (std::same_as<To, From>) {
      out.push_back(e);
    } else if constexpr (std::same_as<To, double>) {
      out.push_back(to_double(e));
    } else {
      out.push_back(Rational(e));
    }
  }
  return RegularOperator<To>(a.rows(), a.cols(), std::move(out));
}

// ---------------------------------------------------------------------------
// Riesz–Kantorovich oracles

/// sup over the strategy's partitions {w_i} of w of Σ_i |B w_i|.
///
/// With the atomic strategy this equals |B|·w; every other partition gives a
/// componentwise smaller or equal value.
template <Scalar S>
LatticeVector<S> modulus_oracle(const RegularOperator<S>& b, const LatticeVector<S>& w,
                                const PartitionStrategy& strategy) {
  if (b.cols() != w.dim()) throw DimensionMismatch("modulus_oracle: dim(w) != cols(B)");
  std::optional<LatticeVector<S>> best;
  for (const auto& partition : partition_family(w, strategy)) {
    LatticeVector<S> total(b.rows());
    for (const auto& piece : partition.pieces()) total += abs(apply(b, piece));
    best = best ? join(*best, total) : total;
  }
  return *best;
}

/// inf over the strategy's partitions {w_i} of w of Σ_i (S w_i ∧ T w_i), for
/// positive S and T. The atomic strategy attains (S ∧ T)·w.
template <Scalar S>
LatticeVector<S> meet_oracle(const RegularOperator<S>& s, const RegularOperator<S>& t,
                             const LatticeVector<S>& w, const PartitionStrategy& strategy) {
  RegularOperator<S>::require_same_shape(s, t);
  if (s.cols() != w.dim()) throw DimensionMismatch("meet_oracle: dim(w) != cols");
  if (!is_positive(s, Tolerance{0.0}) || !is_positive(t, Tolerance{0.0})) {
    throw std::invalid_argument("meet_oracle expects positive operators");
  }
  std::optional<LatticeVector<S>> best;
  for (const auto& partition : partition_family(w, strategy)) {
    LatticeVector<S> total(s.rows());
    for (const auto& piece : partition.pieces()) total += meet(apply(s, piece), apply(t, piece));
    best = best ? meet(*best, total) : total;
  }
  return *best;
}

// ---------------------------------------------------------------------------
// Operator partitions

/// Pieces T_j (possibly signed) with Σ_j |T_j| = T for a positive T.
template <Scalar S>
class OperatorPartition {
 public:
  OperatorPartition(RegularOperator<S> target, std::vector<RegularOperator<S>> pieces,
                    Tolerance tol = {})
      : target_(std::move(target)), pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw InvariantViolation("operator partition needs a piece");
    if (!is_positive(target_, tol)) throw InvariantViolation("operator partition target must be positive");
    RegularOperator<S> total(target_.rows(), target_.cols());
    for (const auto& p : pieces_) total += modulus_closed_form(p);
    if (!approx_equal(total, target_, tol)) {
      throw InvariantViolation("sum of |T_j| does not reproduce the target");
    }
  }

  const RegularOperator<S>& target() const { return target_; }
  const std::vector<RegularOperator<S>>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }

 private:
  RegularOperator<S> target_;
  std::vector<RegularOperator<S>> pieces_;
};

/// Families of operator partitions of a positive T.
///
///  - singleton:       {T}
///  - atomic:          {t_ij·E_ij} over the nonzero entries
///  - random_signed:   each entry split by seeded convex weights into `parts`
///                     pieces, each piece entry carrying a random sign
///  - random_positive: as random_signed but all signs positive (so Σ T_j = T)
struct OperatorSplitStrategy {
  enum class Kind { singleton, atomic, random_signed, random_positive };

  Kind kind = Kind::atomic;
  unsigned parts = 2;
  unsigned samples = 1;
  std::uint64_t seed = 0;

  static OperatorSplitStrategy singleton() { return {Kind::singleton}; }
  static OperatorSplitStrategy atomic() { return {Kind::atomic}; }
  static OperatorSplitStrategy random_signed(unsigned parts, unsigned samples, std::uint64_t seed) {
    return {Kind::random_signed, parts, samples, seed};
  }
  static OperatorSplitStrategy random_positive(unsigned parts, unsigned samples, std::uint64_t seed) {
    return {Kind::random_positive, parts, samples, seed};
  }
};

template <Scalar S>
OperatorPartition<S> atomic_split(const RegularOperator<S>& t) {
  std::vector<RegularOperator<S>> pieces;
  for (std::size_t r = 0; r < t.rows(); ++r)
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (is_zero(t(r, c))) continue;
      RegularOperator<S> piece(t.rows(), t.cols());
      piece(r, c) = t(r, c);
      pieces.push_back(std::move(piece));
    }
  if (pieces.empty()) pieces.emplace_back(t.rows(), t.cols());
  return OperatorPartition<S>(t, std::move(pieces), Tolerance{0.0});
}

template <Scalar S>
OperatorPartition<S> random_split(const RegularOperator<S>& t, unsigned parts, bool signed_pieces,
                                  SeededRng& rng) {
  if (parts == 0) throw std::invalid_argument("random split needs at least one part");
  std::vector<RegularOperator<S>> pieces(parts, RegularOperator<S>(t.rows(), t.cols()));
  for (std::size_t r = 0; r < t.rows(); ++r)
    for (std::size_t c = 0; c < t.cols(); ++c) {
      std::vector<std::int64_t> weights(parts);
      std::int64_t total = 0;
      while (total == 0) {
        total = 0;
        for (auto& x : weights) total += (x = rng.between(0, 8));
      }
      S assigned = from_int<S>(0);
      for (unsigned j = 0; j < parts; ++j) {
        S share = j + 1 < parts ? S(t(r, c) * from_int<S>(weights[j]) / from_int<S>(total))
                                : S(t(r, c) - assigned);
        assigned += share;
        if constexpr (!is_exact_v<S>) share = std::max(share, 0.0);
        pieces[j](r, c) = (signed_pieces && rng.below(2) == 1) ? S(-share) : share;
      }
    }
  return OperatorPartition<S>(t, std::move(pieces));
}

template <Scalar S>
std::vector<OperatorPartition<S>> operator_partition_family(const RegularOperator<S>& t,
                                                            const OperatorSplitStrategy& strategy) {
  if (!is_positive(t, Tolerance{0.0})) throw std::invalid_argument("operator partition target must be positive");
  std::vector<OperatorPartition<S>> family;
  switch (strategy.kind) {
    case OperatorSplitStrategy::Kind::singleton:
      family.emplace_back(t, std::vector<RegularOperator<S>>{t}, Tolerance{0.0});
      break;
    case OperatorSplitStrategy::Kind::atomic:
      family.push_back(atomic_split(t));
      break;
    case OperatorSplitStrategy::Kind::random_signed:
    case OperatorSplitStrategy::Kind::random_positive: {
      SeededRng rng(strategy.seed);
      const bool signed_pieces = strategy.kind == OperatorSplitStrategy::Kind::random_signed;
      for (unsigned s = 0; s < strategy.samples; ++s) {
        family.push_back(random_split(t, strategy.parts, signed_pieces, rng));
      }
      break;
    }
  }
  if (family.empty()) throw EmptyStrategy("operator split strategy produced no partitions");
  return family;
}

/// The two-piece split {T P, T Q} with P the band projection generated by
/// v⁺ and Q = P − I. It satisfies |TP| + |TQ| = T for positive T, and
/// (TP + TQ) v = T|v|.
template <Scalar S>
OperatorPartition<S> band_split(const RegularOperator<S>& t, const LatticeVector<S>& v) {
  if (t.cols() != v.dim()) throw DimensionMismatch("band_split: dim(v) != cols(T)");
  const auto p = BandProjection::generated_by(pos_part(v));
  const auto pm = RegularOperator<S>::from_projection(p);
  const auto qm = pm - RegularOperator<S>::identity(v.dim());
  return OperatorPartition<S>(t, {t * pm, t * qm}, Tolerance{0.0});
}

}  // namespace vlat
