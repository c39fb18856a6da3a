#include "vlat/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "vlat/errors.hpp"

namespace vlat {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::info:
      return "info";
  }
  return "info";
}

const Check* VerificationReport::find_check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ReportBuilder::ReportBuilder(std::string claim_id, bool exact_mode, Tolerance tol) {
  report_.claim_id = std::move(claim_id);
  report_.exact_mode = exact_mode;
  report_.tolerance = exact_mode ? 0.0 : tol.abs;
  report_.exact_zero = exact_mode;
  report_.max_deviation_exact = exact_mode ? "0" : "";
  report_.status = Status::pass;
}

void ReportBuilder::merge(Check check, const Rational* exact) {
  // Repeated checks under one name keep the worst deviation.
  Check* target = nullptr;
  for (auto& c : report_.checks) {
    if (c.name == check.name) target = &c;
  }
  if (exact) {
    if (exact_max_ < *exact) exact_max_ = *exact;
    report_.max_deviation_exact = to_string(exact_max_);
    report_.exact_zero = report_.exact_zero && is_zero(exact_max_);
  } else if (check.deviation != 0.0) {
    report_.exact_zero = false;
  }
  report_.max_deviation = std::max(report_.max_deviation, check.deviation);
  if (!check.passed) report_.status = Status::fail;

  if (!target) {
    report_.checks.push_back(std::move(check));
    return;
  }
  if (check.deviation > target->deviation || (target->passed && !check.passed)) {
    target->deviation = check.deviation;
    if (!check.exact_deviation.empty()) target->exact_deviation = check.exact_deviation;
  }
  target->passed = target->passed && check.passed;
  if (target->note.empty()) target->note = check.note;
}

void ReportBuilder::check_float(const std::string& name, double deviation, double tolerance,
                                std::string note) {
  Check c;
  c.name = name;
  c.deviation = deviation;
  c.passed = deviation <= tolerance;
  c.note = std::move(note);
  if (report_.exact_mode) {
    // Float checks cannot certify an exact zero.
    report_.exact_zero = report_.exact_zero && deviation == 0.0;
  }
  merge(std::move(c), nullptr);
}

void ReportBuilder::check_true(const std::string& name, bool ok, std::string note) {
  if (report_.exact_mode) {
    Rational dev = ok ? Rational(0) : Rational(1);
    Check c{name, ok, ok ? 0.0 : 1.0, to_string(dev), std::move(note)};
    merge(std::move(c), &dev);
  } else {
    merge(Check{name, ok, ok ? 0.0 : 1.0, {}, std::move(note)}, nullptr);
  }
}

void ReportBuilder::witness(std::string label, json value) {
  report_.witnesses.push_back({std::move(label), std::move(value)});
}

void ReportBuilder::detail(const std::string& key, json value) { report_.details[key] = std::move(value); }

void ReportBuilder::inputs(const json& inputs) { report_.inputs_digest = digest(inputs); }

void ReportBuilder::seed(std::uint64_t s) { report_.seed = s; }

bool ReportBuilder::ok() const { return report_.status != Status::fail; }

VerificationReport ReportBuilder::finish() const {
  VerificationReport out = report_;
  if (informational_ && out.status == Status::pass) out.status = Status::info;
  return out;
}

VerificationReport aggregate_reports(const std::string& claim_id, const std::vector<VerificationReport>& cases,
                                     const json& inputs) {
  VerificationReport out;
  out.claim_id = claim_id;
  out.inputs_digest = digest(inputs);
  out.status = Status::pass;
  out.exact_mode = !cases.empty() && std::all_of(cases.begin(), cases.end(),
                                                 [](const VerificationReport& r) { return r.exact_mode; });
  out.exact_zero = out.exact_mode;
  Rational exact_max = 0;
  bool all_info = !cases.empty();
  json failed = json::array();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& r = cases[i];
    if (r.status == Status::fail) {
      out.status = Status::fail;
      failed.push_back(i);
    }
    all_info = all_info && r.status == Status::info;
    out.tolerance = std::max(out.tolerance, r.tolerance);
    out.max_deviation = std::max(out.max_deviation, r.max_deviation);
    out.exact_zero = out.exact_zero && r.exact_zero;
    if (out.exact_mode && !r.max_deviation_exact.empty()) {
      const Rational d = parse_rational(r.max_deviation_exact);
      if (exact_max < d) exact_max = d;
    }
    for (const auto& c : r.checks) {
      auto it = std::find_if(out.checks.begin(), out.checks.end(), [&](const Check& x) { return x.name == c.name; });
      if (it == out.checks.end()) {
        out.checks.push_back(c);
        continue;
      }
      if (c.deviation > it->deviation) {
        it->deviation = c.deviation;
        it->exact_deviation = c.exact_deviation;
      }
      it->passed = it->passed && c.passed;
      if (it->note.empty()) it->note = c.note;
    }
  }
  if (out.exact_mode) out.max_deviation_exact = to_string(exact_max);
  if (all_info && out.status == Status::pass) out.status = Status::info;
  if (!cases.empty()) {
    // Witnesses of the first failing case, else of the first case.
    const std::size_t shown = failed.empty() ? 0 : failed.front().get<std::size_t>();
    out.witnesses = cases[shown].witnesses;
  }
  out.details = {{"cases", cases.size()}, {"failed_cases", std::move(failed)}};
  return out;
}

namespace {

std::string format_double(double d) {
  if (!std::isfinite(d)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  std::string s(buf);
  // Keep floats recognizable as floats.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void write_canonical(const json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + json(key).dump() + ": ";
        write_canonical(value, out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool scalars_only = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (scalars_only) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write_canonical(j[i], out, indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        write_canonical(j[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string canonical_json(const json& j) {
  std::string out;
  write_canonical(j, out, 0);
  out += "\n";
  return out;
}

std::string digest(const json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_json(j)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

json to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json cj = {{"name", c.name}, {"passed", c.passed}, {"deviation", c.deviation}};
    if (!c.exact_deviation.empty()) cj["deviation_exact"] = c.exact_deviation;
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(std::move(cj));
  }
  json witnesses = json::array();
  for (const auto& w : r.witnesses) witnesses.push_back({{"label", w.label}, {"value", w.value}});

  json out = {
      {"claim_id", r.claim_id},
      {"inputs_digest", r.inputs_digest},
      {"status", to_string(r.status)},
      {"mode", r.exact_mode ? "exact" : "float"},
      {"max_deviation", r.max_deviation},
      {"exact_zero", r.exact_zero},
      {"checks", std::move(checks)},
      {"witnesses", std::move(witnesses)},
      {"details", r.details},
      {"seed", r.seed ? json(*r.seed) : json(nullptr)},
  };
  if (r.exact_mode) out["max_deviation_exact"] = r.max_deviation_exact;
  else out["tolerance"] = r.tolerance;
  if (r.runtime_ms) out["runtime_ms"] = *r.runtime_ms;
  return out;
}

void write_text_atomically(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

void emit_report(const VerificationReport& report, const std::filesystem::path& path) {
  write_text_atomically(path, canonical_json(to_json(report)));
}

}  // namespace vlat
