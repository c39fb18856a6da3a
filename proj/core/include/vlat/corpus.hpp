#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vlat/report.hpp"
#include "vlat/superop.hpp"

namespace vlat {

enum class EntryMode { rational, floating };
enum class SignMode { mixed, positive };

/// Parameters of a seeded random corpus. Without fixed dims each case draws
/// (w, x, y, z) from {1, ..., max_dim}⁴.
struct CorpusParams {
  std::uint64_t seed = 0;
  std::optional<SuperDims> dims;
  std::size_t max_dim = 3;
  std::size_t count = 1;
  EntryMode entries = EntryMode::rational;
  SignMode sign = SignMode::mixed;
  // Rational grid: p/q with q <= max_den and |p/q| <= bound.
  std::int64_t bound = 5;
  std::int64_t max_den = 8;
  std::size_t points = 3;

  json to_json() const;
};

/// Parses "seed=7,dims=2x2x2x2,count=100[,entries=rational|float]
/// [,sign=mixed|positive][,max_dim=3]". dims is "w x x x y x z" or "random".
CorpusParams parse_corpus_spec(std::string_view text);

/// One generated case. A, C: z×y and B, D: x×w carry the sign mode;
/// A0, B0 and T (y×x) are always positive; points are positive w-vectors.
/// Float-mode entries are held as the exact rationals of their doubles.
struct CorpusCase {
  std::size_t index = 0;
  SuperDims dims{};
  bool floating = false;
  RegularOperator<Rational> a{1, 1}, b{1, 1}, c{1, 1}, d{1, 1};
  RegularOperator<Rational> a0{1, 1}, b0{1, 1}, t{1, 1};
  std::vector<LatticeVector<Rational>> points;

  json to_json() const;
  static CorpusCase from_json(const json& j);
};

/// Case `index` depends only on (params, index).
CorpusCase generate_case(const CorpusParams& params, std::size_t index);

std::vector<CorpusCase> generate_corpus(const CorpusParams& params);

/// Writes case_NNNN.json files and manifest.json (params plus per-file
/// digests) into `dir`; returns the manifest.
json write_corpus(const CorpusParams& params, const std::filesystem::path& dir);

}  // namespace vlat
