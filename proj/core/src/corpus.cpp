#include "vlat/corpus.hpp"

#include <charconv>
#include <cstdio>

#include "vlat/errors.hpp"
#include "vlat/json_io.hpp"
#include "vlat/random.hpp"

namespace vlat {

namespace {

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("corpus field '" + std::string(key) + "' expects a non-negative integer, got '" +
                     std::string(text) + "'");
  }
  return v;
}

SuperDims parse_dims(std::string_view text) {
  std::vector<std::size_t> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find('x', start);
    parts.push_back(parse_unsigned("dims", text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() == 2) parts = {parts[0], parts[1], parts[0], parts[1]};
  if (parts.size() != 4) throw ParseError("dims must be WxXxYxZ (or RxC for all four)");
  for (auto p : parts)
    if (p == 0) throw ParseError("dims must be positive");
  return {parts[0], parts[1], parts[2], parts[3]};
}

const char* name(EntryMode m) { return m == EntryMode::rational ? "rational" : "float"; }
const char* name(SignMode m) { return m == SignMode::mixed ? "mixed" : "positive"; }

RegularOperator<Rational> random_matrix(SeededRng& rng, const CorpusParams& p, std::size_t rows,
                                        std::size_t cols, bool positive) {
  RegularOperator<Rational> m(rows, cols);
  const std::int64_t lo = positive ? 0 : -p.bound;
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (p.entries == EntryMode::rational) {
        m(r, c) = rng.rational(lo, p.bound, p.max_den);
      } else {
        m(r, c) = Rational(rng.uniform(static_cast<double>(lo), static_cast<double>(p.bound)));
      }
    }
  return m;
}

LatticeVector<Rational> random_point(SeededRng& rng, const CorpusParams& p, std::size_t dim) {
  LatticeVector<Rational> v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (p.entries == EntryMode::rational) {
      // Strictly positive: numerator at least 1.
      const auto den = rng.between(1, p.max_den);
      v[i] = Rational(static_cast<long>(rng.between(1, p.bound * den)), static_cast<unsigned long>(den));
      v[i].canonicalize();
    } else {
      v[i] = Rational(rng.uniform(0.125, static_cast<double>(p.bound)));
    }
  }
  return v;
}

}  // namespace

json CorpusParams::to_json() const {
  json j = {{"seed", seed},       {"count", count},        {"entries", name(entries)},
            {"sign", name(sign)}, {"bound", bound},        {"max_den", max_den},
            {"points", points},   {"max_dim", max_dim}};
  if (dims) {
    j["dims"] = {dims->w, dims->x, dims->y, dims->z};
  } else {
    j["dims"] = "random";
  }
  return j;
}

CorpusParams parse_corpus_spec(std::string_view text) {
  CorpusParams p;
  bool have_count = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const auto item = text.substr(start, end - start);
    start = end + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("corpus item '" + std::string(item) + "' lacks '='");
    const auto key = item.substr(0, eq);
    const auto value = item.substr(eq + 1);
    if (key == "seed") {
      p.seed = parse_unsigned(key, value);
    } else if (key == "count") {
      p.count = parse_unsigned(key, value);
      have_count = true;
    } else if (key == "dims") {
      if (value == "random") {
        p.dims.reset();
      } else {
        p.dims = parse_dims(value);
      }
    } else if (key == "max_dim") {
      p.max_dim = parse_unsigned(key, value);
    } else if (key == "entries") {
      if (value == "rational") {
        p.entries = EntryMode::rational;
      } else if (value == "float") {
        p.entries = EntryMode::floating;
      } else {
        throw ParseError("entries must be 'rational' or 'float'");
      }
    } else if (key == "sign") {
      if (value == "mixed") {
        p.sign = SignMode::mixed;
      } else if (value == "positive") {
        p.sign = SignMode::positive;
      } else {
        throw ParseError("sign must be 'mixed' or 'positive'");
      }
    } else if (key == "points") {
      p.points = parse_unsigned(key, value);
    } else {
      throw ParseError("unknown corpus field '" + std::string(key) + "'");
    }
  }
  if (have_count && p.count == 0) throw ParseError("count must be at least 1");
  if (p.max_dim == 0) throw ParseError("max_dim must be at least 1");
  return p;
}

CorpusCase generate_case(const CorpusParams& params, std::size_t index) {
  SeededRng rng(derive_seed(params.seed, index));
  CorpusCase c;
  c.index = index;
  c.floating = params.entries == EntryMode::floating;
  if (params.dims) {
    c.dims = *params.dims;
  } else {
    const auto draw = [&] { return static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(params.max_dim))); };
    c.dims.w = draw();
    c.dims.x = draw();
    c.dims.y = draw();
    c.dims.z = draw();
  }
  const bool positive = params.sign == SignMode::positive;
  const auto& d = c.dims;
  c.a = random_matrix(rng, params, d.z, d.y, positive);
  c.b = random_matrix(rng, params, d.x, d.w, positive);
  c.c = random_matrix(rng, params, d.z, d.y, positive);
  c.d = random_matrix(rng, params, d.x, d.w, positive);
  c.a0 = random_matrix(rng, params, d.z, d.y, true);
  c.b0 = random_matrix(rng, params, d.x, d.w, true);
  c.t = random_matrix(rng, params, d.y, d.x, true);
  for (std::size_t i = 0; i < params.points; ++i) c.points.push_back(random_point(rng, params, d.w));
  return c;
}

std::vector<CorpusCase> generate_corpus(const CorpusParams& params) {
  std::vector<CorpusCase> out;
  out.reserve(params.count);
  for (std::size_t i = 0; i < params.count; ++i) out.push_back(generate_case(params, i));
  return out;
}

json CorpusCase::to_json() const {
  const auto m = [&](const RegularOperator<Rational>& x) {
    return floating ? vlat::to_json(convert<double>(x)) : vlat::to_json(x);
  };
  json pts = json::array();
  for (const auto& p : points) pts.push_back(floating ? vlat::to_json(convert<double>(p)) : vlat::to_json(p));
  return {{"index", index}, {"dims", {dims.w, dims.x, dims.y, dims.z}}, {"entries", floating ? "float" : "rational"},
          {"A", m(a)}, {"B", m(b)}, {"C", m(c)}, {"D", m(d)}, {"A0", m(a0)}, {"B0", m(b0)}, {"T", m(t)},
          {"w", std::move(pts)}};
}

CorpusCase CorpusCase::from_json(const json& j) {
  if (!j.is_object()) throw ParseError("corpus case must be a JSON object");
  CorpusCase c;
  try {
    c.index = j.at("index").get<std::size_t>();
    const auto& dims = j.at("dims");
    if (!dims.is_array() || dims.size() != 4) throw ParseError("case dims must be [w,x,y,z]");
    c.dims = {dims[0].get<std::size_t>(), dims[1].get<std::size_t>(), dims[2].get<std::size_t>(),
              dims[3].get<std::size_t>()};
    c.floating = j.value("entries", std::string("rational")) == "float";
  } catch (const json::exception& e) {
    throw ParseError(std::string("corpus case: ") + e.what());
  }
  const auto field = [&](const char* key, std::size_t rows, std::size_t cols) {
    if (!j.contains(key)) throw ParseError(std::string("corpus case lacks '") + key + "'");
    auto m = matrix_from_json<Rational>(j[key]);
    if (m.rows() != rows || m.cols() != cols) {
      throw ParseError(std::string("corpus case field '") + key + "' has shape " + m.shape_string());
    }
    return m;
  };
  const auto& d = c.dims;
  c.a = field("A", d.z, d.y);
  c.b = field("B", d.x, d.w);
  c.c = field("C", d.z, d.y);
  c.d = field("D", d.x, d.w);
  c.a0 = field("A0", d.z, d.y);
  c.b0 = field("B0", d.x, d.w);
  c.t = field("T", d.y, d.x);
  if (j.contains("w")) {
    if (!j["w"].is_array()) throw ParseError("corpus case 'w' must be an array");
    for (const auto& p : j["w"]) {
      auto v = vector_from_json<Rational>(p);
      if (v.dim() != d.w) throw ParseError("corpus point has the wrong dimension");
      c.points.push_back(std::move(v));
    }
  }
  return c;
}

json write_corpus(const CorpusParams& params, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  json files = json::array();
  for (std::size_t i = 0; i < params.count; ++i) {
    const auto c = generate_case(params, i);
    char name[32];
    std::snprintf(name, sizeof name, "case_%04zu.json", i);
    const json j = c.to_json();
    write_text_atomically(dir / name, canonical_json(j));
    files.push_back({{"file", name}, {"digest", digest(j)}});
  }
  json manifest = {{"params", params.to_json()}, {"files", std::move(files)}};
  write_text_atomically(dir / "manifest.json", canonical_json(manifest));
  return manifest;
}

}  // namespace vlat
