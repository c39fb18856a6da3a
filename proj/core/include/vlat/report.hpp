#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vlat/lattice.hpp"
#include "vlat/regular_op.hpp"
#include "vlat/scalar.hpp"

namespace vlat {

using json = nlohmann::json;

enum class Status { pass, fail, info };

std::string to_string(Status s);

struct Check {
  std::string name;
  bool passed = true;
  double deviation = 0.0;
  // Exact deviation as a rational string; empty in float mode.
  std::string exact_deviation;
  std::string note;
};

struct Witness {
  std::string label;
  json value;
};

/// Outcome of one claim verification. Deterministic given inputs and seed;
/// runtime_ms is only serialized when set.
struct VerificationReport {
  std::string claim_id;
  std::string inputs_digest;
  Status status = Status::info;
  bool exact_mode = false;
  double tolerance = 0.0;
  double max_deviation = 0.0;
  bool exact_zero = false;
  std::string max_deviation_exact;
  std::vector<Check> checks;
  std::vector<Witness> witnesses;
  json details = json::object();
  std::optional<std::uint64_t> seed;
  std::optional<double> runtime_ms;

  bool passed() const { return status != Status::fail; }
  const Check* find_check(const std::string& name) const;
};

/// Accumulates named checks. In exact mode a check passes iff its deviation
/// is exactly zero; in float mode iff it is within the tolerance.
class ReportBuilder {
 public:
  ReportBuilder(std::string claim_id, bool exact_mode, Tolerance tol = {});

  template <Scalar S>
  void check_equal(const std::string& name, const LatticeVector<S>& got,
                   const LatticeVector<S>& expected) {
    record<S>(name, max_abs_diff(got, expected));
  }

  template <Scalar S>
  void check_equal(const std::string& name, const RegularOperator<S>& got,
                   const RegularOperator<S>& expected) {
    record<S>(name, max_abs_diff(got, expected));
  }

  template <Scalar S>
  void check_equal(const std::string& name, const S& got, const S& expected) {
    record<S>(name, abs_of(S(got - expected)));
  }

  /// got <= bound componentwise; deviation is the largest excess.
  template <Scalar S>
  void check_leq(const std::string& name, const LatticeVector<S>& got, const LatticeVector<S>& bound) {
    S excess = from_int<S>(0);
    for (std::size_t i = 0; i < got.dim(); ++i) excess = max_of(excess, S(got[i] - bound[i]));
    record<S>(name, excess);
  }

  template <Scalar S>
  void check_leq(const std::string& name, const S& got, const S& bound) {
    record<S>(name, max_of(from_int<S>(0), S(got - bound)));
  }

  /// Operator that must be zero; deviation is its largest |entry|.
  template <Scalar S>
  void check_zero(const std::string& name, const RegularOperator<S>& m) {
    record<S>(name, max_abs_diff(m, RegularOperator<S>(m.rows(), m.cols())));
  }

  /// Float-valued check against an explicit tolerance, used by the norm
  /// verifiers regardless of the scalar mode of the inputs.
  void check_float(const std::string& name, double deviation, double tolerance,
                   std::string note = {});

  /// Structural check. A failure counts as deviation 1.
  void check_true(const std::string& name, bool ok, std::string note = {});

  void witness(std::string label, json value);
  void detail(const std::string& key, json value);
  void inputs(const json& inputs);
  void seed(std::uint64_t s);

  /// Marks the report informational; it then passes unless a check failed.
  void informational() { informational_ = true; }

  VerificationReport finish() const;

  /// Running verdict: false once any check has failed.
  bool ok() const;

 private:
  template <Scalar S>
  void record(const std::string& name, const S& deviation);

  void merge(Check check, const Rational* exact);

  VerificationReport report_;
  Rational exact_max_{0};
  bool informational_ = false;
};

template <Scalar S>
void ReportBuilder::record(const std::string& name, const S& deviation) {
  Check c;
  c.name = name;
  c.deviation = to_double(deviation);
  if constexpr (is_exact_v<S>) {
    c.exact_deviation = to_string(deviation);
    c.passed = is_zero(deviation);
    merge(std::move(c), &deviation);
  } else {
    c.passed = deviation <= report_.tolerance;
    merge(std::move(c), nullptr);
  }
}

/// Folds per-case reports into one: checks merge by name keeping the worst
/// deviation, status fails if any case failed, details list the failing
/// case indices.
VerificationReport aggregate_reports(const std::string& claim_id, const std::vector<VerificationReport>& cases,
                                     const json& inputs);

/// Canonical JSON text: keys sorted, two-space indent, floats printed with
/// 17 significant digits, trailing newline.
std::string canonical_json(const json& j);

/// "fnv1a64:<16 hex digits>" over the canonical text of `j`.
std::string digest(const json& j);

json to_json(const VerificationReport& report);

/// Writes canonical JSON to `path` via a temporary file and rename, so a
/// failed write never leaves a partial report behind.
void emit_report(const VerificationReport& report, const std::filesystem::path& path);

void write_text_atomically(const std::filesystem::path& path, const std::string& text);

}  // namespace vlat
