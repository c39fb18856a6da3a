#include "vlat/norms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "vlat/errors.hpp"
#include "vlat/json_io.hpp"
#include "vlat/random.hpp"

namespace vlat {

// ---------------------------------------------------------------------------
// LatticeNorm

LatticeNorm::LatticeNorm(double p) : p_(p) {
  if (!(p >= 1.0)) throw std::invalid_argument("norm exponent must be >= 1");
}

LatticeNorm::LatticeNorm(double p, LatticeVector<double> weights) : LatticeNorm(p) {
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("norm weights must be positive");
  }
  scales_.reserve(weights.dim());
  for (double w : weights) scales_.push_back(is_inf() ? w : std::pow(w, 1.0 / p_));
  weights_ = std::move(weights);
}

LatticeNorm LatticeNorm::from_scales(double p, std::vector<double> scales) {
  std::vector<double> weights;
  weights.reserve(scales.size());
  for (double s : scales) weights.push_back(p == kInf ? s : std::pow(s, p));
  LatticeNorm n(p, LatticeVector<double>(std::move(weights)));
  n.scales_ = std::move(scales);
  return n;
}

LatticeNorm LatticeNorm::dual(std::size_t dim) const {
  const double q = conjugate(p_);
  if (!weighted()) return LatticeNorm(q);
  check_dim(dim);
  std::vector<double> inv;
  inv.reserve(scales_.size());
  for (double s : scales_) inv.push_back(1.0 / s);
  return from_scales(q, std::move(inv));
}

void LatticeNorm::check_dim(std::size_t dim) const {
  if (weighted() && scales_.size() != dim) {
    throw DimensionMismatch("norm weights have dim " + std::to_string(scales_.size()) + ", expected " +
                            std::to_string(dim));
  }
}

std::string LatticeNorm::describe() const {
  std::string s = is_inf() ? "l_inf" : "l_" + json(p_).dump();
  if (weighted()) s += " (weighted)";
  return s;
}

double parse_p(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "inf" || t == "infinity" || t == "oo") return kInf;
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid norm exponent '" + std::string(text) + "'");
  }
  if (used != t.size() || !(p >= 1.0)) throw ParseError("norm exponent must be >= 1 or 'inf'");
  return p;
}

double conjugate(double p) {
  if (p == 1.0) return kInf;
  if (p == kInf) return 1.0;
  return p / (p - 1.0);
}

namespace {

double plain_norm(const std::vector<double>& v, double p) {
  if (p == kInf) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
  }
  // Scale by the largest entry to avoid overflow in |x|^p.
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x) / m, p);
  return m * std::pow(s, 1.0 / p);
}

// u with ‖u‖_{q*} = 1 (or u = 0) and ⟨u, v⟩ = ‖v‖_q.
std::vector<double> dual_direction(const std::vector<double>& v, double q) {
  std::vector<double> u(v.size(), 0.0);
  auto sign = [](double x) { return static_cast<double>((x > 0) - (x < 0)); };
  if (q == 1.0) {
    for (std::size_t i = 0; i < v.size(); ++i) u[i] = sign(v[i]);
    return u;
  }
  if (q == kInf) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (std::abs(v[i]) > std::abs(v[best])) best = i;
    }
    u[best] = v[best] == 0.0 ? 1.0 : sign(v[best]);
    return u;
  }
  const double nv = plain_norm(v, q);
  if (nv == 0.0) return u;
  for (std::size_t i = 0; i < v.size(); ++i) {
    u[i] = sign(v[i]) * std::pow(std::abs(v[i]) / nv, q - 1.0);
  }
  return u;
}

using Dense = std::vector<std::vector<double>>;

Dense scaled_dense(const RegularOperator<double>& a, const LatticeNorm& from, const LatticeNorm& to) {
  Dense m(a.rows(), std::vector<double>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m[r][c] = to.scale(r) * a(r, c) / from.scale(c);
  return m;
}

std::vector<double> mul(const Dense& m, const std::vector<double>& x) {
  std::vector<double> y(m.size(), 0.0);
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < x.size(); ++c) y[r] += m[r][c] * x[c];
  return y;
}

std::vector<double> mul_t(const Dense& m, const std::vector<double>& y) {
  std::vector<double> x(m.empty() ? 0 : m[0].size(), 0.0);
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < x.size(); ++c) x[c] += m[r][c] * y[r];
  return x;
}

NormResult finish(const std::vector<double>& scaled_witness, const LatticeNorm& from, double value,
                  bool certified, std::string method) {
  std::vector<double> x(scaled_witness.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = scaled_witness[i] / from.scale(i);
  return {value, LatticeVector<double>(std::move(x)), certified, std::move(method)};
}

// Multistart nonlinear power iteration for the ℓp → ℓq norm of m.
NormResult search_norm(const Dense& m, double p, double q, bool positive, const LatticeNorm& from,
                       const SearchOptions& opts) {
  const std::size_t n = m[0].size();
  const double pstar = conjugate(p);
  SeededRng rng(opts.seed);

  std::vector<std::vector<double>> starts;
  starts.emplace_back(n, 1.0);
  for (std::size_t j = 0; j < n && starts.size() < opts.starts; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    starts.push_back(std::move(e));
  }
  while (starts.size() < std::max<std::size_t>(opts.starts, 1)) {
    std::vector<double> x(n);
    for (double& v : x) v = positive ? rng.unit() + 1e-3 : rng.uniform(-1.0, 1.0);
    starts.push_back(std::move(x));
  }

  double best = -1.0;
  std::vector<double> best_x;
  for (auto x : starts) {
    double nx = plain_norm(x, p);
    if (nx == 0.0) continue;
    for (double& v : x) v /= nx;
    double value = plain_norm(mul(m, x), q);
    for (unsigned it = 0; it < opts.iterations; ++it) {
      auto z = mul_t(m, dual_direction(mul(m, x), q));
      auto next = dual_direction(z, pstar);
      if (positive) {
        for (double& v : next) v = std::abs(v);
      }
      const double nn = plain_norm(next, p);
      if (nn == 0.0) break;
      for (double& v : next) v /= nn;
      const double next_value = plain_norm(mul(m, next), q);
      if (next_value <= value * (1.0 + 1e-15)) {
        if (next_value > value) {
          x = std::move(next);
          value = next_value;
        }
        break;
      }
      x = std::move(next);
      value = next_value;
    }
    if (value > best) {
      best = value;
      best_x = x;
    }
  }
  return finish(best_x, from, best, false, "power_iteration");
}

}  // namespace

double vector_norm(const LatticeVector<double>& x, const LatticeNorm& n) {
  n.check_dim(x.dim());
  std::vector<double> v(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) v[i] = n.scale(i) * x[i];
  return plain_norm(v, n.p());
}

NormResult operator_norm(const RegularOperator<double>& a, const LatticeNorm& from, const LatticeNorm& to,
                         const SearchOptions& opts) {
  from.check_dim(a.cols());
  to.check_dim(a.rows());
  const Dense m = scaled_dense(a, from, to);
  const double p = from.p();
  const double q = to.p();
  const std::size_t n = a.cols();

  if (p == 1.0) {
    std::size_t best = 0;
    double value = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> col(a.rows());
      for (std::size_t r = 0; r < a.rows(); ++r) col[r] = m[r][j];
      const double v = plain_norm(col, q);
      if (v > value) {
        value = v;
        best = j;
      }
    }
    std::vector<double> e(n, 0.0);
    e[best] = 1.0;
    return finish(e, from, value, true, "max_column");
  }

  if (q == kInf) {
    const double pstar = conjugate(p);
    std::size_t best = 0;
    double value = -1.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      const double v = plain_norm(m[r], pstar);
      if (v > value) {
        value = v;
        best = r;
      }
    }
    auto x = dual_direction(m[best], pstar);
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) x[0] = 1.0;
    return finish(x, from, value, true, "max_row_dual");
  }

  const bool positive = is_positive(a, Tolerance{0.0});
  if (p == kInf && positive) {
    std::vector<double> ones(n, 1.0);
    return finish(ones, from, plain_norm(mul(m, ones), q), true, "positive_top_vector");
  }

  if (p == 2.0 && q == 2.0) {
    Eigen::MatrixXd em(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < n; ++c) em(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m[r][c];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(em, Eigen::ComputeThinV);
    std::vector<double> x(n);
    for (std::size_t c = 0; c < n; ++c) x[c] = svd.matrixV()(static_cast<Eigen::Index>(c), 0);
    if (positive) {
      // Perron vector of AᵀA; fix the sign.
      for (double& v : x) v = std::abs(v);
    }
    return finish(x, from, svd.singularValues()(0), true, "largest_singular_value");
  }

  return search_norm(m, p, q, positive, from, opts);
}

NormResult regular_norm(const RegularOperator<double>& a, const LatticeNorm& from, const LatticeNorm& to,
                        const SearchOptions& opts) {
  return operator_norm(modulus_closed_form(a), from, to, opts);
}

bool NormAssignment::all_l1() const { return w.p() == 1.0 && x.p() == 1.0 && y.p() == 1.0 && z.p() == 1.0; }

json NormAssignment::describe() const {
  auto one = [](const LatticeNorm& n) {
    json j = {{"p", n.is_inf() ? json("inf") : json(n.p())}};
    if (n.weights()) j["weights"] = to_json(*n.weights());
    return j;
  };
  return {{"W", one(w)}, {"X", one(x)}, {"Y", one(y)}, {"Z", one(z)}};
}

// ---------------------------------------------------------------------------
// Exact ℓ¹ paths

namespace {

template <Scalar S>
S scale_as(const LatticeNorm& n, std::size_t i) {
  if constexpr (is_exact_v<S>) {
    return Rational(n.scale(i));
  } else {
    return n.scale(i);
  }
}

template <Scalar S>
void require_l1(const LatticeNorm& n) {
  if (n.p() != 1.0) throw std::invalid_argument("exact path requires l1 norms");
}

}  // namespace

template <Scalar S>
S l1_regular_norm(const RegularOperator<S>& a, const LatticeNorm& from, const LatticeNorm& to) {
  require_l1<S>(from);
  require_l1<S>(to);
  from.check_dim(a.cols());
  to.check_dim(a.rows());
  S best = from_int<S>(0);
  for (std::size_t c = 0; c < a.cols(); ++c) {
    S col = from_int<S>(0);
    for (std::size_t r = 0; r < a.rows(); ++r) col += scale_as<S>(to, r) * abs_of(a(r, c));
    col /= scale_as<S>(from, c);
    if (best < col) best = col;
  }
  return best;
}

template <Scalar S>
S superop_regular_norm_l1(const Superoperator<S>& m, const NormAssignment& norms) {
  if (!norms.all_l1()) throw std::invalid_argument("superop_regular_norm_l1 requires l1 norms");
  const auto& d = m.dims();
  const Superoperator<S> abs_m = modulus(m);
  // Vertex: column j of T is (s^X_j / s^Y_{choice[j]}) e_{choice[j]}.
  std::vector<std::size_t> choice(d.x, 0);
  S best = from_int<S>(0);
  while (true) {
    RegularOperator<S> t(d.y, d.x);
    for (std::size_t j = 0; j < d.x; ++j) {
      t(choice[j], j) = scale_as<S>(norms.x, j) / scale_as<S>(norms.y, choice[j]);
    }
    const S value = l1_regular_norm(abs_m.apply_via_rep(t), norms.w, norms.z);
    if (best < value) best = value;
    std::size_t k = 0;
    while (k < d.x && ++choice[k] == d.y) choice[k++] = 0;
    if (k == d.x) break;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Regular-norm multiplicativity

template <Scalar S>
VerificationReport verify_cor23(const RegularOperator<S>& a_in, const RegularOperator<S>& b_in,
                                const NormAssignment& norms, const Cor23Options& opts) {
  ReportBuilder rb("cor23", false, Tolerance{opts.tolerance});
  rb.inputs({{"A", to_json(a_in)}, {"B", to_json(b_in)}, {"norms", norms.describe()}});
  rb.seed(opts.seed);
  rb.detail("norms", norms.describe());

  const auto a = convert<double>(a_in);
  const auto b = convert<double>(b_in);
  const auto abs_a = modulus_closed_form(a);
  const auto abs_b = modulus_closed_form(b);
  const auto abs_m = modulus(build(a, b));  // entrywise |rep|, not M_{|A|,|B|}

  const LatticeNorm x_dual = norms.x.dual(b.rows());
  const LatticeNorm w_dual = norms.w.dual(b.cols());

  const NormResult ra = regular_norm(a, norms.y, norms.z, opts.search);
  const NormResult rb_norm = regular_norm(b, norms.w, norms.x, opts.search);
  const double product = ra.value * rb_norm.value;
  const bool right_certified = ra.certified && rb_norm.certified;
  rb.detail("regular_norm_A", ra.value);
  rb.detail("regular_norm_B", rb_norm.value);
  rb.detail("product", product);
  rb.detail("right_certified", right_certified);

  // Certified left side for ℓ¹ assignments, exact in rational mode.
  if (norms.all_l1()) {
    const S left = superop_regular_norm_l1(build(a_in, b_in), norms);
    const S right = l1_regular_norm(a_in, norms.y, norms.z) * l1_regular_norm(b_in, norms.w, norms.x);
    rb.detail("left_certified", to_double(left));
    if constexpr (is_exact_v<S>) {
      rb.detail("left_certified_exact", to_string(left));
      rb.detail("product_exact", to_string(right));
      rb.check_equal("closed_form_equality", left, right);
    } else {
      rb.check_float("closed_form_equality", std::abs(left - right), opts.closed_form_tolerance);
    }
  }

  const double tol = right_certified ? opts.tolerance : opts.search_relative_tolerance * std::max(1.0, product);

  // Rank-one witness x′⊗y: y norms |A|, x′ norms |B|′ on the dual side.
  const NormResult ny = operator_norm(abs_a, norms.y, norms.z, opts.search);
  const NormResult nx = operator_norm(abs_b.transpose(), x_dual, w_dual, opts.search);
  const auto y = abs(ny.witness);
  const auto xprime = abs(nx.witness);
  const auto t = rank_one(xprime, y);
  const NormResult t_norm = regular_norm(t, norms.x, norms.y, opts.search);
  const double expected_t_norm = vector_norm(xprime, x_dual) * vector_norm(y, norms.y);
  if (t_norm.certified) {
    rb.check_float("rank_one_norm_consistency", std::abs(t_norm.value - expected_t_norm), opts.tolerance);
  }
  const double t_scale = expected_t_norm > 0.0 ? expected_t_norm : 1.0;
  const auto image = abs_m.apply_via_rep(t);
  const NormResult image_norm = regular_norm(image, norms.w, norms.z, opts.search);
  const double witness_value = image_norm.value / t_scale;
  rb.detail("rank_one_witness_value", witness_value);
  rb.check_float("rank_one_witness_attains", std::max(0.0, product - witness_value), tol);
  rb.witness("x_prime", to_json(xprime));
  rb.witness("y", to_json(y));

  // Positive T of unit regular norm never push the left side past the product.
  const bool sample_norms_certified = 
      operator_norm(RegularOperator<double>::filled(a.cols(), b.rows(), 1.0), norms.x, norms.y, opts.search)
          .certified;
  if (opts.samples > 0 && sample_norms_certified) {
    SeededRng rng(derive_seed(opts.seed, 23));
    double sample_max = 0.0;
    for (unsigned s = 0; s < opts.samples; ++s) {
      RegularOperator<double> ts(a.cols(), b.rows());
      for (std::size_t r = 0; r < ts.rows(); ++r)
        for (std::size_t c = 0; c < ts.cols(); ++c) ts(r, c) = rng.unit() < 0.3 ? 0.0 : rng.unit();
      const double n = regular_norm(ts, norms.x, norms.y, opts.search).value;
      if (n == 0.0) continue;
      ts *= 1.0 / n;
      sample_max = std::max(sample_max, regular_norm(abs_m.apply_via_rep(ts), norms.w, norms.z, opts.search).value);
    }
    rb.detail("sample_max", sample_max);
    rb.detail("samples", opts.samples);
    rb.check_float("samples_bounded_by_product", std::max(0.0, sample_max - product), tol);
  } else {
    rb.detail("samples", 0);
    rb.check_true("samples_bounded_by_product", true, "skipped: no closed-form norm on L(X,Y)");
  }
  return rb.finish();
}

VerificationReport gap_report(const RegularOperator<double>& a, const RegularOperator<double>& b,
                              const NormAssignment& norms, unsigned samples, std::uint64_t seed,
                              const SearchOptions& search) {
  ReportBuilder rb("gap", false, Tolerance{1e-9});
  rb.inputs({{"A", to_json(a)}, {"B", to_json(b)}, {"norms", norms.describe()}, {"samples", samples}});
  rb.seed(seed);
  rb.informational();
  rb.detail("norms", norms.describe());

  const NormResult na = operator_norm(a, norms.y, norms.z, search);
  const NormResult nb = operator_norm(b, norms.w, norms.x, search);
  const NormResult ra = regular_norm(a, norms.y, norms.z, search);
  const NormResult rbn = regular_norm(b, norms.w, norms.x, search);
  const double regular_side = ra.value * rbn.value;
  const double upper = na.value * nb.value;

  rb.check_float("regular_dominates_A", std::max(0.0, na.value - ra.value), 1e-9);
  rb.check_float("regular_dominates_B", std::max(0.0, nb.value - rbn.value), 1e-9);

  // Rank-one witness from norming vectors of A and of B′.
  const LatticeNorm x_dual = norms.x.dual(b.rows());
  const LatticeNorm w_dual = norms.w.dual(b.cols());
  const NormResult ny = operator_norm(a, norms.y, norms.z, search);
  const NormResult nx = operator_norm(b.transpose(), x_dual, w_dual, search);
  double best = 0.0;
  auto consider = [&](const RegularOperator<double>& t) {
    const NormResult tn = operator_norm(t, norms.x, norms.y, search);
    if (tn.value == 0.0) return;
    const double v = operator_norm(a * t * b, norms.w, norms.z, search).value / tn.value;
    best = std::max(best, v);
  };
  consider(rank_one(nx.witness, ny.witness));

  SeededRng rng(seed);
  for (unsigned s = 0; s < samples; ++s) {
    RegularOperator<double> t(a.cols(), b.rows());
    for (std::size_t r = 0; r < t.rows(); ++r)
      for (std::size_t c = 0; c < t.cols(); ++c) t(r, c) = rng.uniform(-1.0, 1.0);
    consider(t);
  }

  const double rho = regular_side > 0.0 ? best / regular_side : 0.0;
  const double rho_upper = regular_side > 0.0 ? upper / regular_side : 0.0;
  rb.check_float("sampled_below_submultiplicative_bound", std::max(0.0, best - upper), 1e-9 * std::max(1.0, upper));
  rb.detail("operator_norm_A", na.value);
  rb.detail("operator_norm_B", nb.value);
  rb.detail("regular_norm_A", ra.value);
  rb.detail("regular_norm_B", rbn.value);
  rb.detail("regular_side", regular_side);
  rb.detail("operator_side_sampled", best);
  rb.detail("operator_side_upper", upper);
  rb.detail("rho", rho);
  rb.detail("rho_upper", rho_upper);
  rb.detail("certified", na.certified && nb.certified && ra.certified && rbn.certified);
  rb.detail("dim", a.rows() * b.cols());
  return rb.finish();
}

RegularOperator<double> hadamard_power(unsigned m) {
  const RegularOperator<double> h2{{1.0, 1.0}, {1.0, -1.0}};
  RegularOperator<double> h = RegularOperator<double>::identity(1);
  for (unsigned i = 0; i < m; ++i) h = kron(h, h2);
  return h;
}

template Rational l1_regular_norm<Rational>(const RegularOperator<Rational>&, const LatticeNorm&,
                                            const LatticeNorm&);
template double l1_regular_norm<double>(const RegularOperator<double>&, const LatticeNorm&, const LatticeNorm&);
template Rational superop_regular_norm_l1<Rational>(const Superoperator<Rational>&, const NormAssignment&);
template double superop_regular_norm_l1<double>(const Superoperator<double>&, const NormAssignment&);
template VerificationReport verify_cor23<Rational>(const RegularOperator<Rational>&,
                                                   const RegularOperator<Rational>&, const NormAssignment&,
                                                   const Cor23Options&);
template VerificationReport verify_cor23<double>(const RegularOperator<double>&, const RegularOperator<double>&,
                                                 const NormAssignment&, const Cor23Options&);

}  // namespace vlat
