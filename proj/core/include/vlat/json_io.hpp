#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "vlat/lattice.hpp"
#include "vlat/regular_op.hpp"
#include "vlat/superop.hpp"

namespace vlat {

using json = nlohmann::json;

/// Rationals serialize as "p/q" strings, doubles as numbers.
json scalar_to_json(const Rational& q);
json scalar_to_json(double x);

/// Accepts "p/q" / decimal strings and JSON numbers. Integral numbers are
/// exact; other numbers convert with the exact value of the binary double.
template <Scalar S>
S scalar_from_json(const json& j);

/// {"dim": n, "entries": [...]}
template <Scalar S>
json to_json(const LatticeVector<S>& v);

/// {"rows": r, "cols": c, "entries": [[...], ...]}
template <Scalar S>
json to_json(const RegularOperator<S>& m);

/// {"dims": [w,x,y,z], "A": ..., "B": ...} when factors are known,
/// {"dims": [w,x,y,z], "rep": ...} otherwise.
template <Scalar S>
json to_json(const Superoperator<S>& m);

template <Scalar S>
LatticeVector<S> vector_from_json(const json& j);

template <Scalar S>
RegularOperator<S> matrix_from_json(const json& j);

template <Scalar S>
Superoperator<S> superoperator_from_json(const json& j);

/// Reads and parses a JSON file; throws ParseError with the path on failure.
json read_json_file(const std::filesystem::path& path);

}  // namespace vlat
