#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "vlat/partitions.hpp"
#include "vlat/regular_op.hpp"
#include "vlat/report.hpp"
#include "vlat/superop.hpp"

namespace vlat {

/// f(x) = x_k on R^n: a Riesz homomorphism with f(e) = 1 for e = (1, ..., 1).
///
/// Unlike the singular functional of the ℓ∞ construction (a limit along a
/// free ultrafilter, which has no finite representation) this functional is
/// order continuous. The lab verifies every step that does not depend on
/// singularity and tabulates the two that do.
class CoordinateFunctional {
 public:
  /// `index` is 0-based.
  CoordinateFunctional(std::size_t dim, std::size_t index);

  std::size_t dim() const { return dim_; }
  std::size_t index() const { return index_; }

  Rational operator()(const LatticeVector<Rational>& x) const;
  LatticeVector<Rational> as_vector() const;

 private:
  std::size_t dim_;
  std::size_t index_;
};

/// B = f⊗e, the n×n matrix whose k-th column is all ones: B w = w_k e.
RegularOperator<Rational> build_B(const CoordinateFunctional& f);

/// I ∧ B = E_kk in the finite model.
RegularOperator<Rational> identity_meet_B(const CoordinateFunctional& f);

/// inf { T x : 0 <= x <= e, x ∧ (e − x) = 0, f(x) = 1 }, componentwise over
/// the finitely many components of e. T must be positive.
LatticeVector<Rational> meet_via_components(const RegularOperator<Rational>& t, const CoordinateFunctional& f,
                                            std::size_t cap = kDefaultEnumerationCap);

struct GDoublePrimeOptions {
  // Maximum number of disjoint partitions of e examined; 0 means all.
  std::size_t partition_budget = 0;
  // Random positive operator splits, on top of the singleton and atomic ones.
  unsigned operator_split_samples = 16;
  unsigned max_split_parts = 8;
  std::uint64_t seed = 0;
  std::size_t cap = kDefaultEnumerationCap;
};

struct GDoublePrimeResult {
  LatticeVector<Rational> infimum{1};
  std::size_t partitions = 0;
  std::size_t operator_splits = 0;
  std::size_t members = 0;
};

/// Smallest member, componentwise, of
///   G″ = { Σ_i Σ_j T_i x_j ∧ f(x_j) T_i e }
/// over the enumerated disjoint partitions (x_j) of e and sampled positive
/// operator partitions (T_i) of T (Σ T_i = T): the singleton, the atomic
/// split and `operator_split_samples` random convex splits.
GDoublePrimeResult inf_G_double_prime(const RegularOperator<Rational>& t, const CoordinateFunctional& f,
                                      const GDoublePrimeOptions& opts = {});

/// For a disjoint partition (x_j) of e: the unique j₀ with f(x_{j₀}) = 1,
/// all other pieces having f = 0. Throws InvariantViolation otherwise.
std::size_t single_support_check(const CoordinateFunctional& f, const Partition<Rational>& partition);

struct CounterexampleOptions {
  std::uint64_t seed = 0;
  // Random positive T compared against the rep evaluation of the meet.
  unsigned random_operators = 8;
  GDoublePrimeOptions g_double_prime{};
  // Evaluate Λ(B) at this point as well (default: only at e).
  std::optional<LatticeVector<Rational>> eval_point;
};

/// Builds Λ = M_{I,I} ∧ M_{I,B} through the superoperator lattice and checks
/// the derivation chain: Λ(B)(e) = e, agreement with the component formula
/// and with G″, the finite identity Λ = M_{I,I∧B}, and the single-support
/// property of disjoint partitions. `k` is 0-based. The report's details
/// carry the finite-versus-ℓ∞ contrast table.
VerificationReport counterexample_report(std::size_t n, std::size_t k, const CounterexampleOptions& opts = {});

}  // namespace vlat
