#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vlat/lattice.hpp"
#include "vlat/regular_op.hpp"
#include "vlat/report.hpp"
#include "vlat/superop.hpp"

namespace vlat {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Weighted ℓ^p lattice norm on R^n:
///   ‖x‖ = (Σ w_i |x_i|^p)^{1/p},   p = ∞: max_i w_i |x_i|.
/// Internally ‖x‖ = ‖s ⊙ x‖_p with scales s_i = w_i^{1/p} (s_i = w_i for p = ∞).
/// All such norms are lattice norms and, in finite dimension, order continuous.
class LatticeNorm {
 public:
  explicit LatticeNorm(double p = 2.0);
  LatticeNorm(double p, LatticeVector<double> weights);

  static LatticeNorm lp(double p) { return LatticeNorm(p); }
  static LatticeNorm from_scales(double p, std::vector<double> scales);

  double p() const { return p_; }
  bool is_inf() const { return p_ == kInf; }
  bool weighted() const { return !scales_.empty(); }
  const std::optional<LatticeVector<double>>& weights() const { return weights_; }

  /// Scale s_i; 1 when unweighted.
  double scale(std::size_t i) const { return scales_.empty() ? 1.0 : scales_.at(i); }

  /// Dual norm on the dual space: ℓ^{p*} with scales 1/s_i.
  LatticeNorm dual(std::size_t dim) const;

  void check_dim(std::size_t dim) const;
  std::string describe() const;

 private:
  double p_;
  std::optional<LatticeVector<double>> weights_;
  std::vector<double> scales_;
};

/// Parses "inf"/"infinity"/"oo" or a number >= 1.
double parse_p(std::string_view text);

/// Conjugate exponent: 1/p + 1/p* = 1.
double conjugate(double p);

double vector_norm(const LatticeVector<double>& x, const LatticeNorm& n);

template <Scalar S>
double vector_norm(const LatticeVector<S>& x, const LatticeNorm& n) {
  return vector_norm(convert<double>(x), n);
}

struct NormResult {
  double value = 0.0;
  LatticeVector<double> witness{1};
  // Closed form (certified) versus multistart search lower bound.
  bool certified = false;
  std::string method;
};

struct SearchOptions {
  unsigned starts = 24;
  unsigned iterations = 300;
  std::uint64_t seed = 0x5eed;
};

/// ‖A‖ from (R^cols, from) to (R^rows, to). Closed forms: from p = 1; to
/// q = ∞; from p = ∞ with A >= 0; p = q = 2 (largest singular value).
/// Otherwise a seeded multistart nonlinear power iteration, restricted to
/// the positive orthant when A >= 0, reported as an uncertified lower bound.
NormResult operator_norm(const RegularOperator<double>& a, const LatticeNorm& from, const LatticeNorm& to,
                         const SearchOptions& opts = {});

/// ‖A‖_r = ‖|A|‖.
NormResult regular_norm(const RegularOperator<double>& a, const LatticeNorm& from, const LatticeNorm& to,
                        const SearchOptions& opts = {});

template <Scalar S>
NormResult regular_norm(const RegularOperator<S>& a, const LatticeNorm& from, const LatticeNorm& to,
                        const SearchOptions& opts = {}) {
  return regular_norm(convert<double>(a), from, to, opts);
}

/// Norms of W, X, Y, Z for M_{A,B}: L(X,Y) → L(W,Z), A: Y→Z, B: W→X.
struct NormAssignment {
  LatticeNorm w;
  LatticeNorm x;
  LatticeNorm y;
  LatticeNorm z;

  static NormAssignment uniform(const LatticeNorm& n) { return {n, n, n, n}; }
  /// All four norms are (possibly weighted) ℓ¹.
  bool all_l1() const;
  json describe() const;
};

/// Exact ‖A‖ for weighted ℓ¹ → ℓ¹: max_j (Σ_i t_i |a_ij|) / s_j.
template <Scalar S>
S l1_regular_norm(const RegularOperator<S>& a, const LatticeNorm& from, const LatticeNorm& to);

/// Exact regular norm of a superoperator between (L(X,Y), ‖·‖_r) and
/// (L(W,Z), ‖·‖_r) when W, X, Y, Z all carry weighted ℓ¹ norms. The
/// positive part of the unit ball of L(X,Y) is a polytope whose vertices
/// send each basis vector e_j to (s^X_j / s^Y_i) e_i; the convex map
/// T ↦ ‖|M| T‖_r peaks at one of them.
template <Scalar S>
S superop_regular_norm_l1(const Superoperator<S>& m, const NormAssignment& norms);

struct Cor23Options {
  unsigned samples = 1000;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;          // float closed forms and witness checks
  double closed_form_tolerance = 1e-12;
  double search_relative_tolerance = 1e-6;
  SearchOptions search{};
};

/// Regular-norm multiplicativity ‖M_{A,B}‖_r = ‖A‖_r ‖B‖_r.
///
/// Right side: product of the regular norms. Left side: the exact vertex
/// computation when every norm is ℓ¹, plus in all cases the rank-one
/// witness T = x′⊗y built from norming vectors of |A| and |B|′ and a sample
/// of random positive T of unit regular norm. Passes iff the witness reaches
/// the product, no sample exceeds it, and the certified left side (when
/// available) equals it.
template <Scalar S>
VerificationReport verify_cor23(const RegularOperator<S>& a, const RegularOperator<S>& b,
                                const NormAssignment& norms, const Cor23Options& opts = {});

/// ρ = (operator norm of M_{A,B} with operator norms on both matrix spaces)
///     / (‖A‖_r ‖B‖_r),
/// estimated from a rank-one witness and random samples, alongside the
/// upper bound ‖A‖‖B‖ / (‖A‖_r‖B‖_r). Informational.
VerificationReport gap_report(const RegularOperator<double>& a, const RegularOperator<double>& b,
                              const NormAssignment& norms, unsigned samples, std::uint64_t seed,
                              const SearchOptions& search = {});

/// H₂^{⊗m} with H₂ = [[1, 1], [1, -1]].
RegularOperator<double> hadamard_power(unsigned m);

}  // namespace vlat
