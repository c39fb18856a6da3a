#include "vlat/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "vlat/errors.hpp"

namespace vlat {

namespace {

std::size_t positive_size(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<std::int64_t>() <= 0) {
    throw ParseError(std::string("field '") + key + "' must be a positive integer");
  }
  return j[key].get<std::size_t>();
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (!std::isfinite(d)) throw ParseError("non-finite scalar");
    return Rational(d);
  }
  throw ParseError("scalar must be a number or a rational string, got " + j.dump());
}

}  // namespace

json scalar_to_json(const Rational& q) { return to_string(q); }
json scalar_to_json(double x) { return x; }

template <Scalar S>
S scalar_from_json(const json& j) {
  if constexpr (is_exact_v<S>) {
    return rational_from_json(j);
  } else {
    if (j.is_number()) return j.get<double>();
    return rational_from_json(j).get_d();
  }
}

template <Scalar S>
json to_json(const LatticeVector<S>& v) {
  json entries = json::array();
  for (const auto& e : v) entries.push_back(scalar_to_json(e));
  return {{"dim", v.dim()}, {"entries", std::move(entries)}};
}

template <Scalar S>
json to_json(const RegularOperator<S>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

template <Scalar S>
json to_json(const Superoperator<S>& m) {
  const auto& d = m.dims();
  json out = {{"dims", {d.w, d.x, d.y, d.z}}};
  if (m.has_factors()) {
    out["A"] = to_json(m.left_factor());
    out["B"] = to_json(m.right_factor());
  } else {
    out["rep"] = to_json(m.rep());
  }
  return out;
}

template <Scalar S>
LatticeVector<S> vector_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("vector must be a JSON object");
  const std::size_t dim = positive_size(j, "dim");
  if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].size() != dim) {
    throw ParseError("vector 'entries' must be an array of length dim");
  }
  std::vector<S> entries;
  entries.reserve(dim);
  for (const auto& e : j["entries"]) entries.push_back(scalar_from_json<S>(e));
  return LatticeVector<S>(std::move(entries));
}

template <Scalar S>
RegularOperator<S> matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix must be a JSON object");
  const std::size_t rows = positive_size(j, "rows");
  const std::size_t cols = positive_size(j, "cols");
  if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].size() != rows) {
    throw ParseError("matrix 'entries' must be an array of 'rows' rows");
  }
  std::vector<S> flat;
  flat.reserve(rows * cols);
  for (const auto& row : j["entries"]) {
    if (!row.is_array() || row.size() != cols) throw ParseError("matrix row length differs from 'cols'");
    for (const auto& e : row) flat.push_back(scalar_from_json<S>(e));
  }
  return RegularOperator<S>(rows, cols, std::move(flat));
}

template <Scalar S>
Superoperator<S> superoperator_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dims") || !j["dims"].is_array() || j["dims"].size() != 4) {
    throw ParseError("superoperator needs 'dims': [w, x, y, z]");
  }
  std::array<std::size_t, 4> d{};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& v = j["dims"][i];
    if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) throw ParseError("dims must be positive integers");
    d[i] = v.get<std::size_t>();
  }
  const SuperDims dims{d[0], d[1], d[2], d[3]};
  if (j.contains("A") && j.contains("B")) {
    auto m = Superoperator<S>::build(matrix_from_json<S>(j["A"]), matrix_from_json<S>(j["B"]));
    if (!(m.dims() == dims)) throw ParseError("factor shapes disagree with 'dims'");
    return m;
  }
  if (j.contains("rep")) {
    try {
      return Superoperator<S>(dims, matrix_from_json<S>(j["rep"]));
    } catch (const DimensionMismatch& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("superoperator needs either 'A' and 'B' or 'rep'");
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

#define VLAT_INSTANTIATE(S)                                          \
  template S scalar_from_json<S>(const json&);                       \
  template json to_json<S>(const LatticeVector<S>&);                 \
  template json to_json<S>(const RegularOperator<S>&);               \
  template json to_json<S>(const Superoperator<S>&);                 \
  template LatticeVector<S> vector_from_json<S>(const json&);        \
  template RegularOperator<S> matrix_from_json<S>(const json&);      \
  template Superoperator<S> superoperator_from_json<S>(const json&);

VLAT_INSTANTIATE(Rational)
VLAT_INSTANTIATE(double)

#undef VLAT_INSTANTIATE

}  // namespace vlat
