#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <vector>

#include "vlat/errors.hpp"
#include "vlat/lattice.hpp"
#include "vlat/random.hpp"

namespace vlat {

/// Default cap on the dimension fed to any exhaustive enumeration.
inline constexpr std::size_t kDefaultEnumerationCap = 20;

/// A component `piece` of a positive `base`: piece ∧ (base − piece) = 0.
template <Scalar S>
struct Component {
  LatticeVector<S> base;
  LatticeVector<S> piece;
};

template <Scalar S>
bool is_component(const LatticeVector<S>& base, const LatticeVector<S>& piece) {
  return is_positive(piece, Tolerance{0.0}) &&
         meet(piece, LatticeVector<S>(base - piece)) == LatticeVector<S>::zeros(base.dim());
}

/// Finite family of positive vectors summing to a positive target.
template <Scalar S>
class Partition {
 public:
  /// Validates positivity of the pieces and the sum (exactly for rationals).
  Partition(LatticeVector<S> target, std::vector<LatticeVector<S>> pieces, Tolerance tol = {})
      : target_(std::move(target)), pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw InvariantViolation("partition needs at least one piece");
    LatticeVector<S> total(target_.dim());
    for (const auto& p : pieces_) {
      if (!is_positive(p, tol)) throw InvariantViolation("partition piece is not positive");
      total += p;
    }
    if (!approx_equal(total, target_, tol)) {
      throw InvariantViolation("partition pieces do not sum to the target");
    }
  }

  const LatticeVector<S>& target() const { return target_; }
  const std::vector<LatticeVector<S>>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  const LatticeVector<S>& operator[](std::size_t i) const { return pieces_[i]; }

 private:
  LatticeVector<S> target_;
  std::vector<LatticeVector<S>> pieces_;
};

namespace detail {

template <Scalar S>
void require_enumerable(const LatticeVector<S>& e, std::size_t cap) {
  if (!is_positive(e, Tolerance{0.0})) throw std::invalid_argument("enumeration base must be positive");
  if (e.dim() > cap || cap > 63) {
    throw EnumerationLimit("dimension " + std::to_string(e.dim()) + " exceeds enumeration cap " +
                           std::to_string(cap));
  }
}

template <Scalar S>
LatticeVector<S> restrict_to(const LatticeVector<S>& e, const std::vector<std::size_t>& support,
                             std::uint64_t mask) {
  LatticeVector<S> x(e.dim());
  for (std::size_t b = 0; b < support.size(); ++b) {
    if (mask >> b & 1U) x[support[b]] = e[support[b]];
  }
  return x;
}

}  // namespace detail

/// Lazy stream of the 2^s components of a positive vector, s = |supp(e)|.
/// Component with mask bit b set keeps the b-th support coordinate.
template <Scalar S>
class ComponentRange {
 public:
  class iterator {
   public:
    using value_type = Component<S>;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const ComponentRange* range, std::uint64_t mask) : range_(range), mask_(mask) {}

    Component<S> operator*() const {
      return {range_->base_, detail::restrict_to(range_->base_, range_->support_, mask_)};
    }
    iterator& operator++() {
      ++mask_;
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return mask_ >= range_->size(); }

   private:
    const ComponentRange* range_ = nullptr;
    std::uint64_t mask_ = 0;
  };

  ComponentRange(LatticeVector<S> base, std::size_t cap)
      : base_(std::move(base)), support_(vlat::support(base_)) {
    detail::require_enumerable(base_, cap);
  }

  iterator begin() const { return iterator(this, 0); }
  std::default_sentinel_t end() const { return {}; }
  std::uint64_t size() const { return std::uint64_t{1} << support_.size(); }

 private:
  LatticeVector<S> base_;
  std::vector<std::size_t> support_;
};

template <Scalar S>
ComponentRange<S> enumerate_components(const LatticeVector<S>& e,
                                       std::size_t cap = kDefaultEnumerationCap) {
  return ComponentRange<S>(e, cap);
}

/// Lazy stream of the partitions of a positive e into at most `max_parts`
/// pairwise-disjoint components, i.e. set partitions of supp(e). Blocks are
/// generated as restricted growth strings in lexicographic order, so the
/// first partition is always the one-piece partition {e}.
template <Scalar S>
class DisjointPartitionRange {
 public:
  class iterator {
   public:
    using value_type = Partition<S>;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    explicit iterator(const DisjointPartitionRange* range)
        : range_(range), labels_(range->support_.size(), 0), done_(false) {}

    Partition<S> operator*() const { return range_->materialize(labels_); }
    iterator& operator++() {
      done_ = !range_->advance(labels_);
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return done_; }

    const std::vector<std::size_t>& labels() const { return labels_; }

   private:
    const DisjointPartitionRange* range_ = nullptr;
    std::vector<std::size_t> labels_;
    bool done_ = true;
  };

  DisjointPartitionRange(LatticeVector<S> base, std::size_t max_parts, std::size_t cap)
      : base_(std::move(base)), support_(vlat::support(base_)), max_parts_(max_parts) {
    detail::require_enumerable(base_, cap);
    if (max_parts_ == 0) throw std::invalid_argument("max_parts must be at least 1");
  }

  iterator begin() const { return iterator(this); }
  std::default_sentinel_t end() const { return {}; }

  const LatticeVector<S>& base() const { return base_; }

 private:
  Partition<S> materialize(const std::vector<std::size_t>& labels) const {
    if (support_.empty()) return Partition<S>(base_, {LatticeVector<S>::zeros(base_.dim())});
    std::size_t blocks = 0;
    for (std::size_t l : labels) blocks = std::max(blocks, l + 1);
    std::vector<LatticeVector<S>> pieces(blocks, LatticeVector<S>::zeros(base_.dim()));
    for (std::size_t b = 0; b < labels.size(); ++b) {
      pieces[labels[b]][support_[b]] = base_[support_[b]];
    }
    return Partition<S>(base_, std::move(pieces), Tolerance{0.0});
  }

  // Next restricted growth string with at most max_parts_ distinct labels.
  bool advance(std::vector<std::size_t>& labels) const {
    const std::size_t s = labels.size();
    if (s <= 1) return false;
    std::vector<std::size_t> prefix_max(s, 0);
    for (std::size_t i = 1; i < s; ++i) prefix_max[i] = std::max(prefix_max[i - 1], labels[i - 1]);
    for (std::size_t i = s - 1; i >= 1; --i) {
      const std::size_t cap = std::min(prefix_max[i] + 1, max_parts_ - 1);
      if (labels[i] < cap) {
        ++labels[i];
        std::fill(labels.begin() + static_cast<std::ptrdiff_t>(i) + 1, labels.end(), 0);
        return true;
      }
    }
    return false;
  }

  LatticeVector<S> base_;
  std::vector<std::size_t> support_;
  std::size_t max_parts_;
};

template <Scalar S>
DisjointPartitionRange<S> disjoint_partitions(const LatticeVector<S>& e, std::size_t max_parts,
                                              std::size_t cap = kDefaultEnumerationCap) {
  return DisjointPartitionRange<S>(e, max_parts, cap);
}

/// Splits w into its atoms w_i·u_i over supp(w). The zero vector yields the
/// one-piece partition {0}.
template <Scalar S>
Partition<S> atomic_partition(const LatticeVector<S>& w) {
  if (!is_positive(w, Tolerance{0.0})) throw std::invalid_argument("atomic_partition needs w >= 0");
  std::vector<LatticeVector<S>> pieces;
  for (std::size_t i : support(w)) {
    LatticeVector<S> atom(w.dim());
    atom[i] = w[i];
    pieces.push_back(std::move(atom));
  }
  if (pieces.empty()) pieces.push_back(LatticeVector<S>::zeros(w.dim()));
  return Partition<S>(w, std::move(pieces), Tolerance{0.0});
}

/// Named families of partitions of a positive vector, the variable sets of
/// the Riesz–Kantorovich formulas.
///
///  - trivial:       {w}
///  - dyadic(L):     supp(w) cut into 2^L contiguous blocks; nested in L and
///                   equal to the atomic partition once 2^L >= |supp(w)|
///  - atomic:        the atoms of w
///  - random_convex: `samples` partitions into `parts` pieces, each
///                   coordinate split by seeded convex weights
///  - all_disjoint:  every disjoint partition into at most `parts` pieces
struct PartitionStrategy {
  enum class Kind { trivial, dyadic, atomic, random_convex, all_disjoint };

  Kind kind = Kind::atomic;
  unsigned level = 1;
  unsigned parts = 2;
  unsigned samples = 1;
  std::uint64_t seed = 0;

  static PartitionStrategy trivial() { return {Kind::trivial}; }
  static PartitionStrategy atomic() { return {Kind::atomic}; }
  static PartitionStrategy dyadic(unsigned level) { return {Kind::dyadic, level}; }
  static PartitionStrategy random_convex(unsigned parts, unsigned samples, std::uint64_t seed) {
    return {Kind::random_convex, 1, parts, samples, seed};
  }
  static PartitionStrategy all_disjoint(unsigned max_parts) {
    return {Kind::all_disjoint, 1, max_parts};
  }
};

template <Scalar S>
Partition<S> dyadic_partition(const LatticeVector<S>& w, unsigned level) {
  const auto supp = support(w);
  if (supp.empty()) return Partition<S>(w, {LatticeVector<S>::zeros(w.dim())}, Tolerance{0.0});
  const std::size_t s = supp.size();
  // Once 2^L reaches s every chunk is a single coordinate.
  const bool fine = level >= 63 || (std::size_t{1} << level) >= s;
  const std::size_t chunks = fine ? s : std::size_t{1} << level;
  std::vector<LatticeVector<S>> pieces;
  for (std::size_t c = 0; c < chunks; ++c) {
    // Boundaries floor(c*s/2^L) are nested across levels.
    const std::size_t lo = fine ? c : (c * s) >> level;
    const std::size_t hi = fine ? c + 1 : ((c + 1) * s) >> level;
    if (lo == hi) continue;
    LatticeVector<S> piece(w.dim());
    for (std::size_t b = lo; b < hi; ++b) piece[supp[b]] = w[supp[b]];
    pieces.push_back(std::move(piece));
  }
  return Partition<S>(w, std::move(pieces), Tolerance{0.0});
}

template <Scalar S>
Partition<S> random_convex_partition(const LatticeVector<S>& w, unsigned parts, SeededRng& rng) {
  if (parts == 0) throw std::invalid_argument("random_convex needs at least one part");
  std::vector<LatticeVector<S>> pieces(parts, LatticeVector<S>::zeros(w.dim()));
  for (std::size_t i = 0; i < w.dim(); ++i) {
    std::vector<std::int64_t> weights(parts);
    std::int64_t total = 0;
    while (total == 0) {
      total = 0;
      for (auto& r : weights) total += (r = rng.between(0, 8));
    }
    S assigned = from_int<S>(0);
    for (unsigned j = 0; j + 1 < parts; ++j) {
      S share = w[i] * from_int<S>(weights[j]) / from_int<S>(total);
      assigned += share;
      pieces[j][i] = share;
    }
    // Last share is the remainder so that the pieces sum to w exactly.
    S last = w[i] - assigned;
    if constexpr (!is_exact_v<S>) last = std::max(last, 0.0);
    pieces[parts - 1][i] = last;
  }
  return Partition<S>(w, std::move(pieces));
}

template <Scalar S>
std::vector<Partition<S>> partition_family(const LatticeVector<S>& w, const PartitionStrategy& strategy,
                                           std::size_t cap = kDefaultEnumerationCap) {
  if (!is_positive(w, Tolerance{0.0})) throw std::invalid_argument("partition target must be positive");
  std::vector<Partition<S>> family;
  switch (strategy.kind) {
    case PartitionStrategy::Kind::trivial:
      family.emplace_back(w, std::vector<LatticeVector<S>>{w}, Tolerance{0.0});
      break;
    case PartitionStrategy::Kind::dyadic:
      family.push_back(dyadic_partition(w, strategy.level));
      break;
    case PartitionStrategy::Kind::atomic:
      family.push_back(atomic_partition(w));
      break;
    case PartitionStrategy::Kind::random_convex: {
      SeededRng rng(strategy.seed);
      for (unsigned s = 0; s < strategy.samples; ++s) {
        family.push_back(random_convex_partition(w, strategy.parts, rng));
      }
      break;
    }
    case PartitionStrategy::Kind::all_disjoint:
      for (auto&& p : disjoint_partitions(w, strategy.parts, cap)) family.push_back(std::move(p));
      break;
  }
  if (family.empty()) throw EmptyStrategy("partition strategy produced no partitions");
  return family;
}

}  // namespace vlat
