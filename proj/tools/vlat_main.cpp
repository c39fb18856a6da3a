// vlat: verify lattice-operator identities on files, seeded corpora and the
// finite counterexample lab.
//
// Exit codes: 0 pass or informational, 1 a check failed, 2 usage or input error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vlat/corpus.hpp"
#include "vlat/counterexample.hpp"
#include "vlat/errors.hpp"
#include "vlat/identities.hpp"
#include "vlat/json_io.hpp"
#include "vlat/norms.hpp"
#include "vlat/report.hpp"

namespace fs = std::filesystem;
using namespace vlat;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  bool exact = true;
  std::string json_path;
  bool timing = false;
  bool quiet = false;
};

struct Inputs {
  std::string a, b, c, d, a0, b0, t;
  std::vector<std::string> w;
  std::string corpus;
};

struct NormFlags {
  std::string p_in = "1", p_mid1 = "1", p_mid2 = "1", p_out = "1";
  unsigned samples = 1000;
  unsigned starts = 24;
  unsigned iterations = 300;

  NormAssignment assignment() const {
    return {LatticeNorm(parse_p(p_in)), LatticeNorm(parse_p(p_mid1)), LatticeNorm(parse_p(p_mid2)),
            LatticeNorm(parse_p(p_out))};
  }
  SearchOptions search(std::uint64_t seed) const { return {starts, iterations, derive_seed(seed, 0x5eed)}; }
};

// Thrown for problems with the invocation itself rather than a verification.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <Scalar S>
RegularOperator<S> load_matrix(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string("missing ") + flag);
  try {
    return matrix_from_json<S>(read_json_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

template <Scalar S>
std::vector<LatticeVector<S>> load_points(const std::vector<std::string>& paths, std::size_t dim) {
  std::vector<LatticeVector<S>> out;
  for (const auto& p : paths) {
    try {
      out.push_back(vector_from_json<S>(read_json_file(p)));
    } catch (const ParseError& e) {
      throw ParseError(p + ": " + e.what());
    }
  }
  if (out.empty()) out.push_back(LatticeVector<S>::ones(dim));
  return out;
}

template <Scalar S>
RegularOperator<S> cast(const RegularOperator<Rational>& m) {
  if constexpr (is_exact_v<S>) return m;
  else return convert<double>(m);
}

template <Scalar S>
std::vector<LatticeVector<S>> cast(const std::vector<LatticeVector<Rational>>& pts) {
  std::vector<LatticeVector<S>> out;
  for (const auto& p : pts) {
    if constexpr (is_exact_v<S>) out.push_back(p);
    else out.push_back(convert<double>(p));
  }
  return out;
}

template <Scalar S>
VerificationReport verify_case(const std::string& claim, const CorpusCase& c, const Globals& g,
                               const NormFlags& nf) {
  const Tolerance tol{g.tolerance};
  const std::uint64_t case_seed = derive_seed(g.seed, c.index);
  if (claim == "prop21") {
    Prop21Inputs<S> in{cast<S>(c.a0), cast<S>(c.b), cast<S>(c.d), cast<S>(c.t), cast<S>(c.points)};
    if (in.points.empty()) in.points.push_back(LatticeVector<S>::ones(c.dims.w));
    return verify_prop21(in, tol, case_seed);
  }
  if (claim == "cor22") return verify_cor22(cast<S>(c.a), cast<S>(c.b), tol);
  if (claim == "synnatzschke_a") return verify_synnatzschke_a(cast<S>(c.a), cast<S>(c.c), cast<S>(c.b0), tol);
  if (claim == "cor23") {
    Cor23Options opts;
    opts.samples = nf.samples;
    opts.seed = case_seed;
    opts.tolerance = g.tolerance;
    opts.search = nf.search(case_seed);
    return verify_cor23(cast<S>(c.a), cast<S>(c.b), nf.assignment(), opts);
  }
  if (claim == "gap") {
    return gap_report(convert<double>(c.a), convert<double>(c.b), nf.assignment(), nf.samples, case_seed,
                      nf.search(case_seed));
  }
  throw UsageError("claim '" + claim + "' does not take corpus inputs");
}

template <Scalar S>
VerificationReport verify_files(const std::string& claim, const Inputs& in, const Globals& g, const NormFlags& nf) {
  const Tolerance tol{g.tolerance};
  if (claim == "prop21") {
    auto a0 = load_matrix<S>(in.a0, "--A0");
    auto b = load_matrix<S>(in.b, "--B");
    auto t = load_matrix<S>(in.t, "--T");
    auto d = in.d.empty() ? RegularOperator<S>(-b) : load_matrix<S>(in.d, "--D");
    auto points = load_points<S>(in.w, b.cols());
    return verify_prop21(Prop21Inputs<S>{std::move(a0), std::move(b), std::move(d), std::move(t), std::move(points)},
                         tol, g.seed);
  }
  if (claim == "cor22") return verify_cor22(load_matrix<S>(in.a, "--A"), load_matrix<S>(in.b, "--B"), tol);
  if (claim == "synnatzschke_a") {
    return verify_synnatzschke_a(load_matrix<S>(in.a, "--A"), load_matrix<S>(in.c, "--C"),
                                 load_matrix<S>(in.b0, "--B0"), tol);
  }
  if (claim == "cor23") {
    Cor23Options opts;
    opts.samples = nf.samples;
    opts.seed = g.seed;
    opts.tolerance = g.tolerance;
    opts.search = nf.search(g.seed);
    return verify_cor23(load_matrix<S>(in.a, "--A"), load_matrix<S>(in.b, "--B"), nf.assignment(), opts);
  }
  if (claim == "gap") {
    return gap_report(load_matrix<double>(in.a, "--A"), load_matrix<double>(in.b, "--B"), nf.assignment(),
                      nf.samples, g.seed, nf.search(g.seed));
  }
  throw UsageError("unknown claim '" + claim + "'");
}

std::vector<CorpusCase> load_corpus(const std::string& source) {
  // A directory written by `vlat corpus`, or an inline spec.
  if (fs::is_directory(source)) {
    const json manifest = read_json_file(fs::path(source) / "manifest.json");
    std::vector<CorpusCase> cases;
    if (!manifest.contains("files") || !manifest["files"].is_array()) {
      throw ParseError(source + "/manifest.json: missing 'files'");
    }
    for (const auto& f : manifest["files"]) {
      const auto path = fs::path(source) / f.at("file").get<std::string>();
      const json j = read_json_file(path);
      if (f.contains("digest") && f["digest"] != digest(j)) {
        throw ParseError(path.string() + ": digest does not match the manifest");
      }
      try {
        cases.push_back(CorpusCase::from_json(j));
      } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
      }
    }
    return cases;
  }
  return generate_corpus(parse_corpus_spec(source));
}

int finish(VerificationReport report, const Globals& g, std::chrono::steady_clock::time_point start) {
  if (g.timing) {
    report.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  if (!g.json_path.empty()) emit_report(report, g.json_path);
  if (!g.quiet) {
    std::cout << report.claim_id << ": " << to_string(report.status);
    if (report.exact_mode) {
      std::cout << " (exact, max deviation " << report.max_deviation_exact << ")";
    } else {
      char buf[64];
      std::snprintf(buf, sizeof buf, " (float, max deviation %.3g)", report.max_deviation);
      std::cout << buf;
    }
    std::cout << "\n";
    for (const auto& c : report.checks) {
      if (!c.passed) std::cout << "  FAILED " << c.name << " deviation " << c.deviation << "\n";
    }
  }
  return report.status == Status::fail ? kExitFail : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector-lattice operator calculus: verify superoperator identities"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for all random choices")->capture_default_str();
  app.add_option("--tolerance", g.tolerance, "Absolute tolerance for float checks")->capture_default_str();
  app.add_flag("--exact,!--no-exact", g.exact, "Exact rational arithmetic (default) or doubles");
  app.add_option("--json", g.json_path, "Write the canonical JSON report here");
  app.add_flag("--timing", g.timing, "Record runtime_ms in the report (breaks byte-identical reruns)");
  app.add_flag("--quiet,-q", g.quiet, "Suppress the summary line");

  Inputs in;
  NormFlags nf;
  const auto add_inputs = [&](CLI::App* sub) {
    sub->add_option("--A", in.a, "Matrix JSON for A");
    sub->add_option("--B", in.b, "Matrix JSON for B");
    sub->add_option("--C", in.c, "Matrix JSON for C");
    sub->add_option("--D", in.d, "Matrix JSON for D (default -B)");
    sub->add_option("--A0", in.a0, "Positive matrix JSON for A0");
    sub->add_option("--B0", in.b0, "Positive matrix JSON for B0");
    sub->add_option("--T", in.t, "Positive matrix JSON for T");
    sub->add_option("--w", in.w, "Positive vector JSON evaluation points (repeatable)");
  };
  const auto add_norms = [&](CLI::App* sub) {
    sub->add_option("--p-in", nf.p_in, "Norm exponent on W")->capture_default_str();
    sub->add_option("--p-mid1", nf.p_mid1, "Norm exponent on X")->capture_default_str();
    sub->add_option("--p-mid2", nf.p_mid2, "Norm exponent on Y")->capture_default_str();
    sub->add_option("--p-out", nf.p_out, "Norm exponent on Z")->capture_default_str();
    sub->add_option("--samples", nf.samples, "Random positive T per case")->capture_default_str();
    sub->add_option("--starts", nf.starts, "Multistart count for searched norms")->capture_default_str();
    sub->add_option("--iterations", nf.iterations, "Power iterations per start")->capture_default_str();
  };

  std::string claim;
  auto* verify = app.add_subcommand("verify", "Verify an identity on input files or a corpus")->fallthrough();
  verify->add_option("claim", claim, "prop21 | cor22 | cor23 | synnatzschke_a | counterexample | gap")
      ->required()
      ->check(CLI::IsMember({"prop21", "cor22", "cor23", "synnatzschke_a", "counterexample", "gap"}));
  add_inputs(verify);
  add_norms(verify);
  verify->add_option("--corpus", in.corpus, "Corpus directory or spec like seed=7,dims=2x2x2x2,count=100");

  std::size_t n = 2, k = 1;
  unsigned random_ops = 8, split_samples = 16;
  std::size_t partition_budget = 0;
  std::string eval_point;
  const auto add_lab = [&](CLI::App* sub) {
    sub->add_option("--n", n, "Dimension (2..cap)")->capture_default_str();
    sub->add_option("--k", k, "Coordinate of the functional, 1-based")->capture_default_str();
    sub->add_option("--random-operators", random_ops, "Random positive T checked")->capture_default_str();
    sub->add_option("--split-samples", split_samples, "Random operator splits per T")->capture_default_str();
    sub->add_option("--partition-budget", partition_budget, "Cap on disjoint partitions (0 = all)")
        ->capture_default_str();
    sub->add_option("--eval", eval_point, "Vector JSON: also evaluate the meet at this point");
  };
  add_lab(verify);
  auto* lab = app.add_subcommand("counterexample", "Run the finite counterexample lab")->fallthrough();
  add_lab(lab);

  std::string corpus_spec, corpus_out;
  auto* corpus = app.add_subcommand("corpus", "Write a seeded random corpus")->fallthrough();
  corpus->add_option("--spec", corpus_spec, "e.g. seed=7,dims=2x2x2x2,count=100")->required();
  corpus->add_option("--out", corpus_out, "Output directory")->required();

  std::string matrix_path;
  bool regular = false;
  auto* norm = app.add_subcommand("norm", "Operator or regular norm of a matrix")->fallthrough();
  norm->add_option("--A", matrix_path, "Matrix JSON")->required();
  norm->add_option("--p-in", nf.p_in, "Domain exponent")->capture_default_str();
  norm->add_option("--p-out", nf.p_out, "Codomain exponent")->capture_default_str();
  norm->add_flag("--regular", regular, "Regular norm ‖|A|‖ instead of ‖A‖");

  unsigned hadamard = 0;
  auto* gap = app.add_subcommand("gap", "Operator versus regular norm of M_{A,B}")->fallthrough();
  add_inputs(gap);
  add_norms(gap);
  gap->add_option("--hadamard", hadamard, "Use A = B = H2^{⊗m}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (*corpus) {
      const json manifest = write_corpus(parse_corpus_spec(corpus_spec), corpus_out);
      if (!g.quiet) std::cout << "wrote " << manifest["files"].size() << " cases to " << corpus_out << "\n";
      return kExitPass;
    }

    if (*norm) {
      const auto a = load_matrix<double>(matrix_path, "--A");
      const LatticeNorm from(parse_p(nf.p_in)), to(parse_p(nf.p_out));
      const SearchOptions search = nf.search(g.seed);
      const NormResult r = regular ? regular_norm(a, from, to, search) : operator_norm(a, from, to, search);
      const json out = {{"value", r.value},
                        {"certified", r.certified},
                        {"method", r.method},
                        {"witness", to_json(r.witness)},
                        {"from", from.describe()},
                        {"to", to.describe()},
                        {"regular", regular}};
      if (!g.json_path.empty()) write_text_atomically(g.json_path, canonical_json(out));
      if (!g.quiet) std::cout << canonical_json(out);
      return kExitPass;
    }

    const auto run_lab = [&] {
      if (k < 1 || k > n) throw UsageError("--k must lie in 1..n");
      CounterexampleOptions opts;
      opts.seed = g.seed;
      opts.random_operators = random_ops;
      opts.g_double_prime.operator_split_samples = split_samples;
      opts.g_double_prime.partition_budget = partition_budget;
      if (!eval_point.empty()) opts.eval_point = vector_from_json<Rational>(read_json_file(eval_point));
      return counterexample_report(n, k - 1, opts);
    };

    if (*lab) return finish(run_lab(), g, start);

    if (*gap) {
      const NormAssignment norms = nf.assignment();
      if (hadamard) {
        const auto h = hadamard_power(hadamard);
        return finish(gap_report(h, h, norms, nf.samples, g.seed, nf.search(g.seed)), g, start);
      }
      return finish(verify_files<double>("gap", in, g, nf), g, start);
    }

    if (claim == "counterexample") return finish(run_lab(), g, start);

    if (!in.corpus.empty()) {
      const auto cases = load_corpus(in.corpus);
      std::vector<VerificationReport> reports;
      reports.reserve(cases.size());
      for (const auto& c : cases) {
        reports.push_back(g.exact ? verify_case<Rational>(claim, c, g, nf) : verify_case<double>(claim, c, g, nf));
      }
      json inputs = json::array();
      for (const auto& c : cases) inputs.push_back(c.to_json());
      auto report = aggregate_reports(claim, reports, inputs);
      report.seed = g.seed;
      report.details["corpus"] = in.corpus;
      return finish(std::move(report), g, start);
    }
    return finish(g.exact ? verify_files<Rational>(claim, in, g, nf) : verify_files<double>(claim, in, g, nf), g,
                  start);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    // Dimension mismatches and violated preconditions of the inputs.
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
