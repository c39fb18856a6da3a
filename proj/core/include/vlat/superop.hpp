#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "vlat/errors.hpp"
#include "vlat/regular_op.hpp"

namespace vlat {

/// Dimensions of the four coordinate lattices W, X, Y, Z. A two-sided
/// multiplication operator maps L(X, Y) (y×x matrices) into L(W, Z) (z×w).
struct SuperDims {
  std::size_t w = 1;
  std::size_t x = 1;
  std::size_t y = 1;
  std::size_t z = 1;

  friend bool operator==(const SuperDims&, const SuperDims&) = default;

  std::string to_string() const {
    return std::to_string(w) + "x" + std::to_string(x) + "x" + std::to_string(y) + "x" +
           std::to_string(z);
  }
};

/// Regular operator on a matrix lattice, stored as its representation on
/// column-major stacked matrices: rep is (z·w)×(y·x) and
/// vec(M(T)) = rep·vec(T). For M_{A,B}: T ↦ ATB the rep is Bᵀ ⊗ A.
///
/// Results of lattice operations generally have no factor form; asking them
/// for factors throws MissingFactorForm.
template <Scalar S>
class Superoperator {
 public:
  Superoperator(SuperDims dims, RegularOperator<S> rep) : dims_(dims), rep_(std::move(rep)) {
    if (rep_.rows() != dims_.z * dims_.w || rep_.cols() != dims_.y * dims_.x) {
      throw DimensionMismatch("rep of shape " + rep_.shape_string() + " does not match dims " +
                              dims_.to_string());
    }
  }

  /// M_{A,B} with A: z×y and B: x×w.
  static Superoperator build(RegularOperator<S> a, RegularOperator<S> b) {
    SuperDims dims{b.cols(), b.rows(), a.cols(), a.rows()};
    Superoperator m(dims, kron(b.transpose(), a));
    m.factors_.emplace(std::move(a), std::move(b));
    return m;
  }

  const SuperDims& dims() const { return dims_; }
  const RegularOperator<S>& rep() const { return rep_; }
  bool has_factors() const { return factors_.has_value(); }

  const RegularOperator<S>& left_factor() const { return factors().first; }
  const RegularOperator<S>& right_factor() const { return factors().second; }

  const std::pair<RegularOperator<S>, RegularOperator<S>>& factors() const {
    if (!factors_) throw MissingFactorForm("superoperator has no (A, B) factor form");
    return *factors_;
  }

  /// M(T) through the factors when present, otherwise through rep.
  RegularOperator<S> apply(const RegularOperator<S>& t) const {
    require_domain(t);
    if (factors_) return factors_->first * t * factors_->second;
    return apply_via_rep(t);
  }

  RegularOperator<S> apply_via_rep(const RegularOperator<S>& t) const {
    require_domain(t);
    return unvec(vlat::apply(rep_, vec(t)), dims_.z, dims_.w);
  }

  friend bool operator==(const Superoperator& a, const Superoperator& b) {
    return a.dims_ == b.dims_ && a.rep_ == b.rep_;
  }

 private:
  void require_domain(const RegularOperator<S>& t) const {
    if (t.rows() != dims_.y || t.cols() != dims_.x) {
      throw DimensionMismatch("superoperator expects a " + std::to_string(dims_.y) + "x" +
                              std::to_string(dims_.x) + " argument, got " + t.shape_string());
    }
  }

  SuperDims dims_;
  RegularOperator<S> rep_;
  std::optional<std::pair<RegularOperator<S>, RegularOperator<S>>> factors_;
};

template <Scalar S>
Superoperator<S> build(const RegularOperator<S>& a, const RegularOperator<S>& b) {
  return Superoperator<S>::build(a, b);
}

namespace detail {
template <Scalar S>
void require_same_dims(const Superoperator<S>& m, const Superoperator<S>& n) {
  if (!(m.dims() == n.dims())) {
    throw DimensionMismatch("superoperator dims differ: " + m.dims().to_string() + " vs " +
                            n.dims().to_string());
  }
}
}  // namespace detail

/// |M|: entrywise absolute value of the rep. L(X, Y) is order isomorphic to
/// the coordinate lattice R^{y·x}, so this is the lattice modulus.
template <Scalar S>
Superoperator<S> modulus(const Superoperator<S>& m) {
  return Superoperator<S>(m.dims(), modulus_closed_form(m.rep()));
}

template <Scalar S>
Superoperator<S> meet(const Superoperator<S>& m, const Superoperator<S>& n) {
  detail::require_same_dims(m, n);
  return Superoperator<S>(m.dims(), meet_closed_form(m.rep(), n.rep()));
}

template <Scalar S>
Superoperator<S> join(const Superoperator<S>& m, const Superoperator<S>& n) {
  detail::require_same_dims(m, n);
  return Superoperator<S>(m.dims(), join_closed_form(m.rep(), n.rep()));
}

template <Scalar S>
Superoperator<S> operator+(const Superoperator<S>& m, const Superoperator<S>& n) {
  detail::require_same_dims(m, n);
  return Superoperator<S>(m.dims(), m.rep() + n.rep());
}

template <Scalar S>
Superoperator<S> operator-(const Superoperator<S>& m, const Superoperator<S>& n) {
  detail::require_same_dims(m, n);
  return Superoperator<S>(m.dims(), m.rep() - n.rep());
}

/// m ∘ n. n maps L(X, Y) into L(W, Z), which must be m's domain.
template <Scalar S>
Superoperator<S> compose(const Superoperator<S>& m, const Superoperator<S>& n) {
  if (m.dims().x != n.dims().w || m.dims().y != n.dims().z) {
    throw DimensionMismatch("cannot compose superoperators " + m.dims().to_string() + " and " +
                            n.dims().to_string());
  }
  SuperDims dims{m.dims().w, n.dims().x, n.dims().y, m.dims().z};
  return Superoperator<S>(dims, m.rep() * n.rep());
}

template <Scalar S>
bool is_positive(const Superoperator<S>& m) {
  return is_positive(m.rep(), Tolerance{0.0});
}

template <Scalar S>
bool is_zero(const Superoperator<S>& m) {
  return is_zero(m.rep());
}

/// sup over the strategy's operator partitions {T_j} of T (Σ|T_j| = T) of
/// (Σ_j |A₀ T_j B|)·w. With the atomic split this equals A₀·T·|B|·w.
template <Scalar S>
LatticeVector<S> operator_partition_sup(const RegularOperator<S>& a0, const RegularOperator<S>& b,
                                        const RegularOperator<S>& t, const LatticeVector<S>& w,
                                        const OperatorSplitStrategy& strategy) {
  if (!is_positive(a0, Tolerance{0.0})) throw std::invalid_argument("operator_partition_sup needs A0 >= 0");
  if (a0.cols() != t.rows() || t.cols() != b.rows() || b.cols() != w.dim()) {
    throw DimensionMismatch("operator_partition_sup: incompatible shapes");
  }
  std::optional<LatticeVector<S>> best;
  for (const auto& partition : operator_partition_family(t, strategy)) {
    RegularOperator<S> total(a0.rows(), b.cols());
    for (const auto& piece : partition.pieces()) total += modulus_closed_form(a0 * piece * b);
    auto value = apply(total, w);
    best = best ? join(*best, value) : value;
  }
  return *best;
}

}  // namespace vlat
