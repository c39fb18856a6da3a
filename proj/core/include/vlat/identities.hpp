#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "vlat/json_io.hpp"
#include "vlat/report.hpp"
#include "vlat/superop.hpp"

namespace vlat {

/// Inputs of the one-sided modulus identity |M_{A0,B}|(T) = M_{A0,|B|}(T)
/// and its join form M_{A0,B} ∨ M_{A0,D} (T) = M_{A0,B∨D}(T).
template <Scalar S>
struct Prop21Inputs {
  RegularOperator<S> a0;  // z×y, positive
  RegularOperator<S> b;   // x×w
  RegularOperator<S> d;   // x×w
  RegularOperator<S> t;   // y×x, positive
  std::vector<LatticeVector<S>> points;  // positive vectors of dim w
};

/// Checks, for positive A0 and T:
///  - modulus_identity:   |M_{A0,B}|(T) = M_{A0,|B|}(T), |M| taken on the rep
///  - join_identity:      (M_{A0,B} ∨ M_{A0,D})(T) = M_{A0,B∨D}(T)
///  - pointwise_identity: both sides agree at every evaluation point w
///  - atomic_split_attains: the atomic operator-partition supremum equals
///                          A0·T·|B|·w
///  - coarser_splits_bounded: singleton and random signed splits stay below
///  - band_split_identity / band_split_dominates: for each atom w_i of w,
///    with P the band projection of (B w_i)⁺ and Q = P − I,
///    A0(TP + TQ)B w_i = A0 T |B w_i| <= (|A0 TP B| + |A0 TQ B|) w_i
template <Scalar S>
VerificationReport verify_prop21(const Prop21Inputs<S>& in, Tolerance tol = {},
                                 std::uint64_t split_seed = 0) {
  ReportBuilder rb("prop21", is_exact_v<S>, tol);
  json points = json::array();
  for (const auto& w : in.points) points.push_back(to_json(w));
  rb.inputs({{"A0", to_json(in.a0)}, {"B", to_json(in.b)}, {"D", to_json(in.d)},
             {"T", to_json(in.t)}, {"w", points}});

  const bool hypotheses = is_positive(in.a0, tol) && is_positive(in.t, tol);
  rb.check_true("hypotheses", hypotheses, "requires A0 >= 0 and T >= 0");
  if (!hypotheses) return rb.finish();

  const auto m = build(in.a0, in.b);
  const auto lhs = modulus(m).apply_via_rep(in.t);
  const auto rhs = build(in.a0, modulus_closed_form(in.b)).apply(in.t);
  rb.check_equal("modulus_identity", lhs, rhs);

  const auto join_lhs = join(m, build(in.a0, in.d)).apply_via_rep(in.t);
  const auto join_rhs = build(in.a0, join_closed_form(in.b, in.d)).apply(in.t);
  rb.check_equal("join_identity", join_lhs, join_rhs);

  for (std::size_t p = 0; p < in.points.size(); ++p) {
    const auto& w = in.points[p];
    if (!is_positive(w, tol)) {
      rb.check_true("hypotheses", false, "evaluation points must be positive");
      continue;
    }
    const auto rhs_w = apply(rhs, w);
    rb.check_equal("pointwise_identity", apply(lhs, w), rhs_w);

    const auto atomic = operator_partition_sup(in.a0, in.b, in.t, w, OperatorSplitStrategy::atomic());
    rb.check_equal("atomic_split_attains", atomic, rhs_w);

    const auto single = operator_partition_sup(in.a0, in.b, in.t, w, OperatorSplitStrategy::singleton());
    rb.check_leq("coarser_splits_bounded", single, rhs_w);
    const auto random = operator_partition_sup(
        in.a0, in.b, in.t, w, OperatorSplitStrategy::random_signed(3, 4, derive_seed(split_seed, p)));
    rb.check_leq("coarser_splits_bounded", random, rhs_w);

    LatticeVector<S> chain(rhs_w.dim());
    const auto atoms = atomic_partition(w);
    for (const auto& atom : atoms.pieces()) {
      const auto bw = apply(in.b, atom);
      const auto split = band_split(in.t, bw);
      const auto& tp = split.pieces()[0];
      const auto& tq = split.pieces()[1];
      const auto target = apply(RegularOperator<S>(in.a0 * in.t), abs(bw));
      rb.check_equal("band_split_identity", apply(RegularOperator<S>(in.a0 * (tp + tq) * in.b), atom),
                     target);
      const auto dominated = apply(RegularOperator<S>(modulus_closed_form(in.a0 * tp * in.b) +
                                                      modulus_closed_form(in.a0 * tq * in.b)),
                                   atom);
      rb.check_leq("band_split_dominates", target, dominated);
      chain += target;
    }
    rb.check_equal("partition_sup_attained", chain, rhs_w);
    if (p == 0) {
      rb.witness("lhs_at_w", to_json(apply(lhs, w)));
      rb.witness("rhs_at_w", to_json(rhs_w));
    }
  }
  rb.witness("modulus_lhs", to_json(lhs));
  return rb.finish();
}

/// The four corner superoperators M_{A±,B±}, in the order
/// (A⁺,B⁺), (A⁺,B⁻), (A⁻,B⁺), (A⁻,B⁻).
template <Scalar S>
std::array<Superoperator<S>, 4> corner_superoperators(const RegularOperator<S>& a,
                                                      const RegularOperator<S>& b) {
  const auto ap = pos_part(a), an = neg_part(a), bp = pos_part(b), bn = neg_part(b);
  return {build(ap, bp), build(ap, bn), build(an, bp), build(an, bn)};
}

/// Checks |M_{A,B}| = M_{|A|,|B|} on the rep, pairwise disjointness of the
/// four corners, the signed expansion M_{A,B} = Σ ±corner, and that the
/// corners sum to M_{|A|,|B|}.
template <Scalar S>
VerificationReport verify_cor22(const RegularOperator<S>& a, const RegularOperator<S>& b,
                                Tolerance tol = {}) {
  ReportBuilder rb("cor22", is_exact_v<S>, tol);
  rb.inputs({{"A", to_json(a)}, {"B", to_json(b)}});

  const auto m = build(a, b);
  const auto abs_m = modulus(m);
  const auto factored = build(modulus_closed_form(a), modulus_closed_form(b));
  rb.check_equal("modulus_identity", abs_m.rep(), factored.rep());

  const auto corners = corner_superoperators(a, b);
  for (std::size_t i = 0; i < corners.size(); ++i)
    for (std::size_t j = i + 1; j < corners.size(); ++j) {
      rb.check_zero("corners_pairwise_disjoint", meet(corners[i], corners[j]).rep());
    }

  const auto expansion = corners[0] - corners[1] - corners[2] + corners[3];
  rb.check_equal("signed_expansion", expansion.rep(), m.rep());
  const auto total = corners[0] + corners[1] + corners[2] + corners[3];
  rb.check_equal("corner_sum", total.rep(), factored.rep());
  return rb.finish();
}

/// For B0 >= 0: |M_{A,B0}| = M_{|A|,B0} and M_{A,B0} ∨ M_{C,B0} = M_{A∨C,B0}.
template <Scalar S>
VerificationReport verify_synnatzschke_a(const RegularOperator<S>& a, const RegularOperator<S>& c,
                                         const RegularOperator<S>& b0, Tolerance tol = {}) {
  ReportBuilder rb("synnatzschke_a", is_exact_v<S>, tol);
  rb.inputs({{"A", to_json(a)}, {"C", to_json(c)}, {"B0", to_json(b0)}});

  const bool hypotheses = is_positive(b0, tol);
  rb.check_true("hypotheses", hypotheses, "requires B0 >= 0");
  if (!hypotheses) return rb.finish();

  rb.check_equal("modulus_identity", modulus(build(a, b0)).rep(),
                 build(modulus_closed_form(a), b0).rep());
  rb.check_equal("join_identity", join(build(a, b0), build(c, b0)).rep(),
                 build(join_closed_form(a, c), b0).rep());
  return rb.finish();
}

}  // namespace vlat
