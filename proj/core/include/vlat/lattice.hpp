#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vlat/errors.hpp"
#include "vlat/scalar.hpp"

namespace vlat {

/// Element of the coordinate Riesz space R^n, ordered componentwise.
template <Scalar S>
class LatticeVector {
 public:
  using value_type = S;

  explicit LatticeVector(std::size_t dim) : entries_(dim, from_int<S>(0)) { check_dim(); }
  explicit LatticeVector(std::vector<S> entries) : entries_(std::move(entries)) { check_dim(); }
  LatticeVector(std::initializer_list<S> entries) : entries_(entries) { check_dim(); }

  static LatticeVector zeros(std::size_t dim) { return LatticeVector(dim); }

  static LatticeVector ones(std::size_t dim) {
    return LatticeVector(std::vector<S>(dim, from_int<S>(1)));
  }

  static LatticeVector unit(std::size_t dim, std::size_t i) {
    LatticeVector v(dim);
    v.at(i) = from_int<S>(1);
    return v;
  }

  std::size_t dim() const { return entries_.size(); }

  const S& operator[](std::size_t i) const { return entries_[i]; }
  S& operator[](std::size_t i) { return entries_[i]; }

  const S& at(std::size_t i) const {
    if (i >= dim()) throw IndexOutOfRange("vector index " + std::to_string(i) + " out of range");
    return entries_[i];
  }
  S& at(std::size_t i) {
    if (i >= dim()) throw IndexOutOfRange("vector index " + std::to_string(i) + " out of range");
    return entries_[i];
  }

  std::span<const S> entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  LatticeVector& operator+=(const LatticeVector& o) {
    require_same_dim(*this, o);
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  LatticeVector& operator-=(const LatticeVector& o) {
    require_same_dim(*this, o);
    for (std::size_t i = 0; i < dim(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  LatticeVector& operator*=(const S& c) {
    for (auto& e : entries_) e *= c;
    return *this;
  }

  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(const S& c, LatticeVector a) { return a *= c; }
  friend LatticeVector operator-(LatticeVector a) {
    for (auto& e : a.entries_) e = -e;
    return a;
  }

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return a.entries_ == b.entries_;
  }

  static void require_same_dim(const LatticeVector& a, const LatticeVector& b) {
    if (a.dim() != b.dim()) {
      throw DimensionMismatch("vector dims differ: " + std::to_string(a.dim()) + " vs " +
                              std::to_string(b.dim()));
    }
  }

 private:
  void check_dim() const {
    if (entries_.empty()) throw DimensionMismatch("lattice vector must have positive dimension");
  }

  std::vector<S> entries_;
};

template <Scalar S, class F>
LatticeVector<S> zip_with(const LatticeVector<S>& u, const LatticeVector<S>& v, F f) {
  LatticeVector<S>::require_same_dim(u, v);
  std::vector<S> out;
  out.reserve(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) out.push_back(f(u[i], v[i]));
  return LatticeVector<S>(std::move(out));
}

template <Scalar S, class F>
LatticeVector<S> map_entries(const LatticeVector<S>& u, F f) {
  std::vector<S> out;
  out.reserve(u.dim());
  for (const auto& e : u) out.push_back(f(e));
  return LatticeVector<S>(std::move(out));
}

template <Scalar S>
LatticeVector<S> meet(const LatticeVector<S>& u, const LatticeVector<S>& v) {
  return zip_with(u, v, [](const S& a, const S& b) { return min_of(a, b); });
}

template <Scalar S>
LatticeVector<S> join(const LatticeVector<S>& u, const LatticeVector<S>& v) {
  return zip_with(u, v, [](const S& a, const S& b) { return max_of(a, b); });
}

template <Scalar S>
LatticeVector<S> abs(const LatticeVector<S>& u) {
  return map_entries(u, [](const S& a) { return abs_of(a); });
}

template <Scalar S>
LatticeVector<S> pos_part(const LatticeVector<S>& u) {
  const S zero = from_int<S>(0);
  return map_entries(u, [&](const S& a) { return max_of(a, zero); });
}

template <Scalar S>
LatticeVector<S> neg_part(const LatticeVector<S>& u) {
  const S zero = from_int<S>(0);
  return map_entries(u, [&](const S& a) { return S(max_of(S(-a), zero)); });
}

template <Scalar S>
bool is_positive(const LatticeVector<S>& u, Tolerance tol = {}) {
  const S zero = from_int<S>(0);
  return std::all_of(u.begin(), u.end(), [&](const S& a) { return approx_leq(zero, a, tol); });
}

/// u <= v componentwise.
template <Scalar S>
bool leq(const LatticeVector<S>& u, const LatticeVector<S>& v, Tolerance tol = {}) {
  LatticeVector<S>::require_same_dim(u, v);
  for (std::size_t i = 0; i < u.dim(); ++i) {
    if (!approx_leq(u[i], v[i], tol)) return false;
  }
  return true;
}

template <Scalar S>
bool approx_equal(const LatticeVector<S>& u, const LatticeVector<S>& v, Tolerance tol = {}) {
  if (u.dim() != v.dim()) return false;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    if (!approx_equal(u[i], v[i], tol)) return false;
  }
  return true;
}

/// max_i |u_i - v_i|.
template <Scalar S>
S max_abs_diff(const LatticeVector<S>& u, const LatticeVector<S>& v) {
  LatticeVector<S>::require_same_dim(u, v);
  S best = from_int<S>(0);
  for (std::size_t i = 0; i < u.dim(); ++i) {
    S d = abs_of(S(u[i] - v[i]));
    if (best < d) best = d;
  }
  return best;
}

/// Indices of nonzero entries, ascending.
template <Scalar S>
std::vector<std::size_t> support(const LatticeVector<S>& u) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < u.dim(); ++i) {
    if (!is_zero(u[i])) idx.push_back(i);
  }
  return idx;
}

template <Scalar S>
S dot(const LatticeVector<S>& u, const LatticeVector<S>& v) {
  LatticeVector<S>::require_same_dim(u, v);
  S acc = from_int<S>(0);
  for (std::size_t i = 0; i < u.dim(); ++i) acc += u[i] * v[i];
  return acc;
}

template <class To, Scalar From>
LatticeVector<To> convert(const LatticeVector<From>& u) {
  std::vector<To> out;
  out.reserve(u.dim());
  for (const auto& e : u) {
    if constexpr (std::same_as<To, From>) {
      out.push_back(e);
    } else if constexpr (std::same_as<To, double>) {
      out.push_back(to_double(e));
    } else {
      out.push_back(Rational(e));
    }
  }
  return LatticeVector<To>(std::move(out));
}

/// Order projection onto the band spanned by a coordinate subset: zeroes
/// every entry outside `support`.
class BandProjection {
 public:
  BandProjection(std::size_t dim, std::vector<std::size_t> support);

  /// Projection onto the band generated by x, i.e. onto supp(x).
  template <Scalar S>
  static BandProjection generated_by(const LatticeVector<S>& x) {
    return BandProjection(x.dim(), vlat::support(x));
  }

  static BandProjection identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::vector<std::size_t>& support() const { return support_; }
  bool contains(std::size_t i) const { return mask_.at(i); }

  template <Scalar S>
  LatticeVector<S> apply(const LatticeVector<S>& x) const {
    if (x.dim() != dim_) throw DimensionMismatch("band projection dim mismatch");
    LatticeVector<S> out(dim_);
    for (std::size_t i : support_) out[i] = x[i];
    return out;
  }

  /// The projection onto the disjoint complement band.
  BandProjection complement() const;

  /// P∘Q, projection onto the intersection of supports.
  BandProjection compose(const BandProjection& other) const;

  friend bool operator==(const BandProjection& a, const BandProjection& b) {
    return a.dim_ == b.dim_ && a.support_ == b.support_;
  }

 private:
  std::size_t dim_;
  std::vector<std::size_t> support_;
  std::vector<bool> mask_;
};

inline BandProjection::BandProjection(std::size_t dim, std::vector<std::size_t> support)
    : dim_(dim), support_(std::move(support)), mask_(dim, false) {
  if (dim_ == 0) throw DimensionMismatch("band projection must have positive dimension");
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
  for (std::size_t i : support_) {
    if (i >= dim_) {
      throw IndexOutOfRange("support index " + std::to_string(i) + " outside dimension " +
                            std::to_string(dim_));
    }
    mask_[i] = true;
  }
}

inline BandProjection BandProjection::identity(std::size_t dim) {
  std::vector<std::size_t> all(dim);
  for (std::size_t i = 0; i < dim; ++i) all[i] = i;
  return BandProjection(dim, std::move(all));
}

inline BandProjection BandProjection::complement() const {
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!mask_[i]) rest.push_back(i);
  }
  return BandProjection(dim_, std::move(rest));
}

inline BandProjection BandProjection::compose(const BandProjection& other) const {
  if (other.dim_ != dim_) throw DimensionMismatch("band projection dim mismatch");
  std::vector<std::size_t> both;
  for (std::size_t i : support_) {
    if (other.mask_[i]) both.push_back(i);
  }
  return BandProjection(dim_, std::move(both));
}

}  // namespace vlat
