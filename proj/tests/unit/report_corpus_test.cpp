#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support/oracles.hpp"
#include "vlat/corpus.hpp"
#include "vlat/counterexample.hpp"
#include "vlat/identities.hpp"
#include "vlat/json_io.hpp"
#include "vlat/report.hpp"

namespace vlat {
namespace {

namespace fs = std::filesystem;
using testing::MatQ;
using testing::Q;
using testing::VecQ;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("vlat_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(CanonicalJson, SortedKeysAndFixedFloats) {
  const json j = {{"b", 0.1}, {"a", {1, 2}}, {"c", "x"}};
  EXPECT_EQ(canonical_json(j), "{\n  \"a\": [1, 2],\n  \"b\": 0.10000000000000001,\n  \"c\": \"x\"\n}\n");
  EXPECT_EQ(canonical_json(json(2.0)), "2.0\n");
  EXPECT_EQ(digest(j), digest(json::parse(j.dump())));
  EXPECT_NE(digest(j), digest(json{{"b", 0.2}}));
  EXPECT_EQ(digest(j).rfind("fnv1a64:", 0), 0U);
}

TEST(JsonIo, RoundTripsRationalsAndRejectsBadShapes) {
  const MatQ m{{Q(1, 3), -2}, {0, Q(7, 4)}};
  EXPECT_EQ(matrix_from_json<Rational>(to_json(m)), m);
  const VecQ v{Q(-5, 8), 3};
  EXPECT_EQ(vector_from_json<Rational>(to_json(v)), v);
  EXPECT_EQ(scalar_from_json<Rational>(json(0.5)), Q(1, 2));
  EXPECT_EQ(scalar_from_json<Rational>(json("0.1")), Q(1, 10));
  EXPECT_THROW(matrix_from_json<Rational>(json{{"rows", 2}, {"cols", 2}, {"entries", {{1, 2}}}}), ParseError);
  EXPECT_THROW(matrix_from_json<Rational>(json{{"rows", 1}, {"cols", 1}, {"entries", {{"x"}}}}), ParseError);
  EXPECT_THROW(vector_from_json<Rational>(json{{"dim", 0}, {"entries", json::array()}}), ParseError);
  const auto s = build(m, MatQ{{1, -1}});
  EXPECT_EQ(superoperator_from_json<Rational>(to_json(s)).rep(), s.rep());
  EXPECT_EQ(superoperator_from_json<Rational>(to_json(modulus(s))).rep(), modulus(s).rep());
}

TEST(Report, ExactModeStatusFollowsExactZero) {
  ReportBuilder rb("t", true);
  rb.check_equal("same", Q(1, 3), Q(1, 3));
  EXPECT_EQ(rb.finish().status, Status::pass);
  EXPECT_TRUE(rb.finish().exact_zero);
  rb.check_equal("off", Q(1, 3), Q(Q(1, 3) + Q(1, 1000000000)));
  const auto r = rb.finish();
  EXPECT_EQ(r.status, Status::fail);
  EXPECT_FALSE(r.exact_zero);
  EXPECT_EQ(r.max_deviation_exact, "1/1000000000");
}

TEST(Report, RepeatedChecksKeepWorstDeviation) {
  ReportBuilder rb("t", false, Tolerance{1e-3});
  rb.check_float("x", 1e-5, 1e-3);
  rb.check_float("x", 1e-4, 1e-3);
  rb.check_float("x", 1e-6, 1e-3);
  const auto r = rb.finish();
  ASSERT_EQ(r.checks.size(), 1U);
  EXPECT_DOUBLE_EQ(r.checks[0].deviation, 1e-4);
  EXPECT_EQ(r.status, Status::pass);
  rb.informational();
  EXPECT_EQ(rb.finish().status, Status::info);
}

TEST(Report, EmitIsByteIdenticalAndAtomic) {
  const auto dir = scratch("emit");
  const auto report = counterexample_report(3, 2);
  emit_report(report, dir / "a.json");
  emit_report(counterexample_report(3, 2), dir / "b.json");
  EXPECT_EQ(slurp(dir / "a.json"), slurp(dir / "b.json"));
  EXPECT_NE(slurp(dir / "a.json").find("\"status\": \"pass\""), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "a.json.tmp"));
  EXPECT_THROW(emit_report(report, dir / "missing" / "c.json"), std::exception);
  EXPECT_FALSE(fs::exists(dir / "missing" / "c.json"));
}

TEST(Report, RuntimeOnlySerializedWhenSet) {
  auto r = counterexample_report(2, 1);
  EXPECT_FALSE(to_json(r).contains("runtime_ms"));
  r.runtime_ms = 1.5;
  EXPECT_TRUE(to_json(r).contains("runtime_ms"));
}

TEST(Report, AggregateMergesCases) {
  ReportBuilder ok("c", true), bad("c", true);
  ok.check_equal("eq", Q(1), Q(1));
  bad.check_equal("eq", Q(1), Q(2));
  const auto all_ok = aggregate_reports("c", {ok.finish(), ok.finish()}, json::array());
  EXPECT_EQ(all_ok.status, Status::pass);
  EXPECT_TRUE(all_ok.exact_zero);
  const auto mixed = aggregate_reports("c", {ok.finish(), bad.finish()}, json::array());
  EXPECT_EQ(mixed.status, Status::fail);
  EXPECT_EQ(mixed.max_deviation_exact, "1");
  EXPECT_EQ(mixed.details.at("failed_cases"), json::array({1}));
}

TEST(CorpusSpec, Parses) {
  const auto p = parse_corpus_spec("seed=7,dims=2x2x2x2,count=100");
  EXPECT_EQ(p.seed, 7U);
  ASSERT_TRUE(p.dims.has_value());
  EXPECT_EQ(*p.dims, (SuperDims{2, 2, 2, 2}));
  EXPECT_EQ(p.count, 100U);
  EXPECT_EQ(parse_corpus_spec("dims=2x3").dims, (SuperDims{2, 3, 2, 3}));
  EXPECT_FALSE(parse_corpus_spec("dims=random,sign=positive").dims.has_value());
  EXPECT_EQ(parse_corpus_spec("sign=positive").sign, SignMode::positive);
  EXPECT_EQ(parse_corpus_spec("entries=float").entries, EntryMode::floating);
  EXPECT_THROW(parse_corpus_spec("count=0"), ParseError);
  EXPECT_THROW(parse_corpus_spec("dims=2x0x1x1"), ParseError);
  EXPECT_THROW(parse_corpus_spec("colour=red"), ParseError);
  EXPECT_THROW(parse_corpus_spec("seed=abc"), ParseError);
  EXPECT_THROW(parse_corpus_spec("seed"), ParseError);
}

TEST(Corpus, GeneratorContract) {
  auto p = parse_corpus_spec("seed=11,dims=random,count=200");
  for (const auto& c : generate_corpus(p)) {
    for (std::size_t d : {c.dims.w, c.dims.x, c.dims.y, c.dims.z}) {
      EXPECT_GE(d, 1U);
      EXPECT_LE(d, 3U);
    }
    for (const auto* m : {&c.a, &c.b, &c.c, &c.d, &c.a0, &c.b0, &c.t}) {
      for (const auto& e : m->entries()) {
        EXPECT_LE(e, Q(5));
        EXPECT_GE(e, Q(-5));
        EXPECT_LE(e.get_den(), 8);
      }
    }
    EXPECT_TRUE(is_positive(c.a0));
    EXPECT_TRUE(is_positive(c.b0));
    EXPECT_TRUE(is_positive(c.t));
    EXPECT_EQ(c.points.size(), 3U);
    for (const auto& w : c.points) {
      for (const auto& e : w) EXPECT_GT(e, 0);
    }
  }
  p.sign = SignMode::positive;
  for (const auto& c : generate_corpus(p)) {
    EXPECT_TRUE(is_positive(c.a));
    EXPECT_TRUE(is_positive(c.b));
  }
}

TEST(Corpus, RegenerationIsIdenticalAndCasesAreIndependent) {
  const auto p = parse_corpus_spec("seed=7,dims=2x2x2x2,count=3");
  const auto first = generate_corpus(p);
  const auto again = generate_corpus(p);
  ASSERT_EQ(first.size(), 3U);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(first[i].to_json(), again[i].to_json());
    EXPECT_EQ(generate_case(p, i).to_json(), first[i].to_json());
    EXPECT_EQ(CorpusCase::from_json(first[i].to_json()).to_json(), first[i].to_json());
  }
  EXPECT_NE(first[0].to_json(), first[1].to_json());
}

TEST(Corpus, FilesAndManifestAreReproducible) {
  const auto d1 = scratch("corpus1"), d2 = scratch("corpus2");
  const auto p = parse_corpus_spec("seed=7,dims=2x2,count=3");
  const auto m1 = write_corpus(p, d1);
  write_corpus(p, d2);
  EXPECT_EQ(m1.at("files").size(), 3U);
  for (const auto& entry : fs::directory_iterator(d1)) {
    EXPECT_EQ(slurp(entry.path()), slurp(d2 / entry.path().filename()));
  }
  EXPECT_EQ(m1.at("params").at("seed"), 7);
  const auto first = m1.at("files")[0];
  EXPECT_EQ(first.at("digest"), digest(read_json_file(d1 / first.at("file").get<std::string>())));
}

TEST(Corpus, FloatModeHoldsDoublesExactly) {
  const auto p = parse_corpus_spec("seed=1,dims=2x2x2x2,count=5,entries=float");
  for (const auto& c : generate_corpus(p)) {
    const auto j = c.to_json();
    EXPECT_TRUE(j.at("A").at("entries")[0][0].is_number_float());
    EXPECT_EQ(CorpusCase::from_json(j).a, c.a);
    EXPECT_EQ(verify_cor22(c.a, c.b).status, Status::pass);
  }
}

}  // namespace
}  // namespace vlat
