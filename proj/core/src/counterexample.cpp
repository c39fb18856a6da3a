#include "vlat/counterexample.hpp"

#include <string>
#include <vector>

#include "vlat/errors.hpp"
#include "vlat/json_io.hpp"
#include "vlat/random.hpp"

namespace vlat {

CoordinateFunctional::CoordinateFunctional(std::size_t dim, std::size_t index) : dim_(dim), index_(index) {
  if (dim_ == 0) throw DimensionMismatch("coordinate functional needs a positive dimension");
  if (index_ >= dim_) {
    throw IndexOutOfRange("coordinate index " + std::to_string(index_) + " outside dimension " +
                          std::to_string(dim_));
  }
}

Rational CoordinateFunctional::operator()(const LatticeVector<Rational>& x) const {
  if (x.dim() != dim_) throw DimensionMismatch("functional applied to a vector of the wrong dimension");
  return x[index_];
}

LatticeVector<Rational> CoordinateFunctional::as_vector() const {
  return LatticeVector<Rational>::unit(dim_, index_);
}

RegularOperator<Rational> build_B(const CoordinateFunctional& f) {
  return rank_one(f.as_vector(), LatticeVector<Rational>::ones(f.dim()));
}

RegularOperator<Rational> identity_meet_B(const CoordinateFunctional& f) {
  return meet_closed_form(RegularOperator<Rational>::identity(f.dim()), build_B(f));
}

LatticeVector<Rational> meet_via_components(const RegularOperator<Rational>& t, const CoordinateFunctional& f,
                                            std::size_t cap) {
  if (t.rows() != f.dim() || t.cols() != f.dim()) throw DimensionMismatch("T must be n×n");
  if (!is_positive(t, Tolerance{0.0})) throw std::invalid_argument("meet_via_components needs T >= 0");
  const auto e = LatticeVector<Rational>::ones(f.dim());
  std::optional<LatticeVector<Rational>> inf;
  for (const auto& component : enumerate_components(e, cap)) {
    if (f(component.piece) != 1) continue;
    auto tx = apply(t, component.piece);
    inf = inf ? meet(*inf, tx) : tx;
  }
  // x = e always qualifies since f(e) = 1.
  return *inf;
}

namespace {

// T·1_S for every subset S of {0..n-1}, indexed by bitmask.
std::vector<LatticeVector<Rational>> subset_images(const RegularOperator<Rational>& t) {
  const std::size_t n = t.cols();
  std::vector<LatticeVector<Rational>> img(std::size_t{1} << n, LatticeVector<Rational>(t.rows()));
  for (std::size_t mask = 1; mask < img.size(); ++mask) {
    const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
    img[mask] = img[mask & (mask - 1)];
    for (std::size_t r = 0; r < t.rows(); ++r) img[mask][r] += t(r, low);
  }
  return img;
}

}  // namespace

GDoublePrimeResult inf_G_double_prime(const RegularOperator<Rational>& t, const CoordinateFunctional& f,
                                      const GDoublePrimeOptions& opts) {
  const std::size_t n = f.dim();
  if (t.rows() != n || t.cols() != n) throw DimensionMismatch("T must be n×n");
  if (!is_positive(t, Tolerance{0.0})) throw std::invalid_argument("inf_G_double_prime needs T >= 0");
  const auto e = LatticeVector<Rational>::ones(n);

  // Disjoint partitions of e as block masks; f(x_j) is 1 exactly on the block
  // holding the functional's coordinate.
  struct Blocks {
    std::vector<std::size_t> masks;
    std::vector<Rational> f_values;
  };
  std::vector<Blocks> partitions;
  for (const auto& partition : disjoint_partitions(e, n, opts.cap)) {
    Blocks b;
    for (const auto& piece : partition.pieces()) {
      std::size_t mask = 0;
      for (std::size_t i : support(piece)) mask |= std::size_t{1} << i;
      b.masks.push_back(mask);
      b.f_values.push_back(f(piece));
    }
    partitions.push_back(std::move(b));
    if (opts.partition_budget && partitions.size() >= opts.partition_budget) break;
  }

  std::vector<OperatorPartition<Rational>> splits;
  splits.push_back(operator_partition_family(t, OperatorSplitStrategy::singleton()).front());
  splits.push_back(atomic_split(t));
  SeededRng rng(opts.seed);
  const unsigned max_parts = std::max(2U, opts.max_split_parts);
  for (unsigned s = 0; s < opts.operator_split_samples; ++s) {
    const auto parts = static_cast<unsigned>(rng.between(2, max_parts));
    splits.push_back(random_split(t, parts, false, rng));
  }

  GDoublePrimeResult result;
  result.partitions = partitions.size();
  result.operator_splits = splits.size();
  std::optional<LatticeVector<Rational>> inf;
  for (const auto& split : splits) {
    std::vector<std::vector<LatticeVector<Rational>>> images;
    images.reserve(split.size());
    for (const auto& piece : split.pieces()) images.push_back(subset_images(piece));
    const std::size_t full = (std::size_t{1} << n) - 1;

    for (const auto& blocks : partitions) {
      LatticeVector<Rational> member(n);
      for (std::size_t i = 0; i < images.size(); ++i) {
        const auto& ti_e = images[i][full];
        for (std::size_t j = 0; j < blocks.masks.size(); ++j) {
          const auto& ti_xj = images[i][blocks.masks[j]];
          const Rational& fx = blocks.f_values[j];
          for (std::size_t r = 0; r < n; ++r) {
            Rational scaled = fx * ti_e[r];
            member[r] += min_of(ti_xj[r], scaled);
          }
        }
      }
      ++result.members;
      inf = inf ? meet(*inf, member) : member;
    }
  }
  result.infimum = *inf;
  return result;
}

std::size_t single_support_check(const CoordinateFunctional& f, const Partition<Rational>& partition) {
  const auto e = LatticeVector<Rational>::ones(f.dim());
  if (!(partition.target() == e)) throw std::invalid_argument("partition must decompose e");
  for (std::size_t a = 0; a < partition.size(); ++a)
    for (std::size_t b = a + 1; b < partition.size(); ++b) {
      if (!(meet(partition[a], partition[b]) == LatticeVector<Rational>::zeros(f.dim()))) {
        throw std::invalid_argument("partition pieces are not pairwise disjoint");
      }
    }
  std::optional<std::size_t> j0;
  for (std::size_t j = 0; j < partition.size(); ++j) {
    const Rational v = f(partition[j]);
    if (v == 0) continue;
    if (v != 1 || j0) {
      throw InvariantViolation("Riesz homomorphism takes a nonzero value off a single piece");
    }
    j0 = j;
  }
  if (!j0) throw InvariantViolation("no piece carries f(x_j) = 1");
  return *j0;
}

VerificationReport counterexample_report(std::size_t n, std::size_t k, const CounterexampleOptions& opts) {
  if (n < 2) throw std::invalid_argument("counterexample needs n >= 2");
  if (n > opts.g_double_prime.cap) {
    throw EnumerationLimit("n = " + std::to_string(n) + " exceeds the enumeration cap");
  }
  const CoordinateFunctional f(n, k);
  ReportBuilder rb("counterexample", true);
  rb.inputs({{"n", n}, {"k", k + 1}, {"seed", opts.seed}, {"random_operators", opts.random_operators},
             {"operator_split_samples", opts.g_double_prime.operator_split_samples},
             {"partition_budget", opts.g_double_prime.partition_budget}});
  rb.seed(opts.seed);

  using Op = RegularOperator<Rational>;
  const auto e = LatticeVector<Rational>::ones(n);
  const Op identity = Op::identity(n);
  const Op b = build_B(f);
  const auto m_ii = build(identity, identity);
  const auto m_ib = build(identity, b);
  const auto lambda = meet(m_ii, m_ib);

  const auto lambda_b_e = apply(lambda.apply_via_rep(b), e);
  rb.check_equal("lambda_B_at_e_equals_e", lambda_b_e, e);
  rb.check_true("lambda_nonzero", !is_zero(lambda));

  const auto via_components = meet_via_components(b, f, opts.g_double_prime.cap);
  rb.check_equal("component_formula_matches_rep", via_components, lambda_b_e);

  auto g_opts = opts.g_double_prime;
  g_opts.seed = derive_seed(opts.seed, 0);
  const auto g = inf_G_double_prime(b, f, g_opts);
  rb.check_leq("g_double_prime_never_below", via_components, g.infimum);
  rb.check_equal("g_double_prime_attains", g.infimum, via_components);
  std::size_t splits_examined = g.operator_splits;

  const Op i_meet_b = identity_meet_B(f);
  rb.check_equal("identity_meet_B_is_Ekk", i_meet_b, Op::unit(n, n, k, k));
  Rational trace = 0;
  for (std::size_t i = 0; i < n; ++i) trace += i_meet_b(i, i);
  rb.check_equal("identity_meet_B_trace_one", trace, Rational(1));

  rb.check_equal("finite_restoration", lambda.rep(), build(identity, i_meet_b).rep());

  const auto lambda_i_e = apply(lambda.apply_via_rep(identity), e);
  rb.check_equal("lambda_I_at_e_equals_unit", lambda_i_e, LatticeVector<Rational>::unit(n, k));
  rb.check_equal("lambda_I_matches_components", lambda_i_e, meet_via_components(identity, f));

  SeededRng rng(derive_seed(opts.seed, 1));
  for (unsigned s = 0; s < opts.random_operators; ++s) {
    Op t(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) t(r, c) = rng.rational(0, 5, 4);
    const auto expected = meet_via_components(t, f, opts.g_double_prime.cap);
    rb.check_equal("component_formula_matches_rep", expected, apply(lambda.apply_via_rep(t), e));
    g_opts.seed = derive_seed(opts.seed, 2 + s);
    const auto gt = inf_G_double_prime(t, f, g_opts);
    rb.check_leq("g_double_prime_never_below", expected, gt.infimum);
    rb.check_equal("g_double_prime_attains", gt.infimum, expected);
    splits_examined += gt.operator_splits;
  }

  bool single_support = true;
  std::size_t partitions_checked = 0;
  for (const auto& partition : disjoint_partitions(e, n, opts.g_double_prime.cap)) {
    try {
      const std::size_t j0 = single_support_check(f, partition);
      single_support = single_support && partition[j0][k] == 1;
    } catch (const InvariantViolation&) {
      single_support = false;
    }
    ++partitions_checked;
  }
  rb.check_true("single_support", single_support);

  if (opts.eval_point) {
    const auto at = apply(lambda.apply_via_rep(b), *opts.eval_point);
    rb.detail("lambda_B_at_point", to_json(at));
    rb.detail("eval_point", to_json(*opts.eval_point));
  }

  rb.detail("n", n);
  rb.detail("k", k + 1);
  rb.detail("operator_splits_examined", splits_examined);
  rb.detail("disjoint_partitions_checked", partitions_checked);
  rb.detail("g_double_prime_members", g.members);
  rb.witness("lambda_B_at_e", to_json(lambda_b_e));
  rb.witness("identity_meet_B", to_json(i_meet_b));

  const std::string ekk = "E_" + std::to_string(k + 1) + std::to_string(k + 1);
  rb.detail("contrast_table",
            json::array({
                {{"quantity", "I ∧ B"},
                 {"finite_value", ekk},
                 {"paper_linf_value", "0"},
                 {"citation", "l_inf with a singular Riesz homomorphism f, f(e) = 1: B = f⊗e is singular, so I ∧ B = 0"},
                 {"checkable", false}},
                {{"quantity", "M_{I,I} ∧ M_{I,B}"},
                 {"finite_value", "nonzero: (M_{I,I} ∧ M_{I,B})(B)(e) = e"},
                 {"paper_linf_value", "nonzero: (M_{I,I} ∧ M_{I,B})(f⊗e)(e) = e"},
                 {"citation", "infimum over components x of e with f(x) = 1 of T x, evaluated at T = f⊗e"},
                 {"checkable", false}},
                {{"quantity", "M_{I,I} ∧ M_{I,B} = M_{I, I∧B}"},
                 {"finite_value", "holds"},
                 {"paper_linf_value", "fails (M_{I,I∧B} = 0)"},
                 {"citation", "M_{A0,·} is not a Riesz homomorphism on L^r(l_inf)"},
                 {"checkable", false}},
            }));
  return rb.finish();
}

}  // namespace vlat
