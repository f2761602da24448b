#include "intentest/mock_oracle.hpp"

#include "intentest/errors.hpp"
#include "intentest/java_source.hpp"

#include <fstream>
#include <stdexcept>

namespace intentest {

namespace {

ProgramVersion version_from_string(const std::string& s) {
  if (s == "buggy") return ProgramVersion::buggy;
  if (s == "fixed") return ProgramVersion::fixed;
  throw ConfigError("unknown program version '" + s + "' in mock rules");
}

}  // namespace

MockRules MockRules::from_json(const nlohmann::json& j) {
  MockRules r;
  for (const auto& c : j.value("compile_errors", nlohmann::json::array())) {
    CompileRule rule;
    rule.marker = c.at("marker").get<std::string>();
    rule.message = c.value("message", rule.message);
    if (c.contains("versions")) {
      rule.versions.clear();
      for (const auto& v : c.at("versions")) rule.versions.insert(version_from_string(v.get<std::string>()));
    }
    r.compile_errors.push_back(std::move(rule));
  }
  for (const auto& c : j.value("run", nlohmann::json::array())) {
    RunRule rule;
    rule.marker = c.at("marker").get<std::string>();
    rule.fixed = run_verdict_from_string(c.value("fixed", "pass"));
    rule.buggy = run_verdict_from_string(c.value("buggy", "pass"));
    rule.message = c.value("message", "");
    r.run.push_back(std::move(rule));
  }
  if (j.contains("default")) {
    r.default_fixed = run_verdict_from_string(j["default"].value("fixed", "pass"));
    r.default_buggy = run_verdict_from_string(j["default"].value("buggy", "pass"));
  }
  if (j.contains("coverage")) {
    const auto& c = j["coverage"];
    Coverage cov;
    cov.branches_total = c.value("branches_total", 0);
    cov.statements_total = c.value("statements_total", 0);
    for (const auto& rr : c.value("rules", nlohmann::json::array())) {
      CoverageRule rule;
      rule.marker = rr.at("marker").get<std::string>();
      for (const auto& b : rr.value("branches", nlohmann::json::array())) rule.branches.insert(b.get<int>());
      for (const auto& s : rr.value("statements", nlohmann::json::array())) rule.statements.insert(s.get<int>());
      cov.rules.push_back(std::move(rule));
    }
    r.coverage = std::move(cov);
  }
  return r;
}

void MockOracle::set_rules(const std::string& sample_id, MockRules rules) {
  std::lock_guard lock(mu_);
  rules_[sample_id] = std::move(rules);
}

void MockOracle::load_rules(const std::string& sample_id, const std::filesystem::path& sample_dir) {
  auto path = sample_dir / "oracle.mock.json";
  std::ifstream in(path);
  if (!in) return;
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed " + path.string() + ": " + e.what());
  }
  set_rules(sample_id, MockRules::from_json(j));
}

MockRules MockOracle::rules_for(const std::string& sample_id) const {
  std::lock_guard lock(mu_);
  auto it = rules_.find(sample_id);
  return it == rules_.end() ? MockRules{} : it->second;
}

CompileReport MockOracle::compile(const Workspace& ws, const TestSuite& suite) {
  {
    std::lock_guard lock(mu_);
    ++compile_calls_;
  }
  return check_compile(ws, suite);
}

CompileReport MockOracle::check_compile(const Workspace& ws, const TestSuite& suite) const {
  auto rules = rules_for(ws.sample_id);
  auto path = write_test_class(ws, suite);
  auto rendered = java::render_test_class(suite, ws.package_name, ws.test_class);
  CompileReport report;
  for (const auto& rule : rules.compile_errors) {
    if (!rule.versions.count(ws.version)) continue;
    auto pos = rendered.text.find(rule.marker);
    if (pos == std::string::npos) continue;
    report.diagnostics.push_back({path.filename().string(), java::line_of(rendered.text, pos), rule.message});
  }
  report.success = report.diagnostics.empty();
  return report;
}

ExecutionReport MockOracle::run_tests(const Workspace& ws, const TestSuite& suite) {
  if (!check_compile(ws, suite).success) {
    throw std::logic_error("run_tests called on a suite that does not compile");
  }
  auto rules = rules_for(ws.sample_id);
  ExecutionReport report;
  {
    std::lock_guard lock(mu_);
    ++run_calls_;
  }
  for (const auto& t : suite.tests) {
    RunVerdict verdict = ws.version == ProgramVersion::fixed ? rules.default_fixed : rules.default_buggy;
    std::string message;
    for (const auto& rule : rules.run) {
      if (t.source.find(rule.marker) == std::string::npos) continue;
      verdict = ws.version == ProgramVersion::fixed ? rule.fixed : rule.buggy;
      message = rule.message;
      break;
    }
    report.per_test[t.test_id] = verdict;
    if (verdict != RunVerdict::pass) report.messages[t.test_id] = message;
  }
  return report;
}

CoverageReport MockOracle::measure_coverage(const Workspace& ws, const TestSuite& suite) {
  if (ws.version != ProgramVersion::fixed) {
    throw std::logic_error("coverage is measured on the fixed version only");
  }
  auto rules = rules_for(ws.sample_id);
  if (!rules.coverage) throw CoverageUnavailable("no coverage rules for sample " + ws.sample_id);
  std::set<int> branches;
  std::set<int> statements;
  for (const auto& t : suite.tests) {
    for (const auto& rule : rules.coverage->rules) {
      if (t.source.find(rule.marker) == std::string::npos) continue;
      branches.insert(rule.branches.begin(), rule.branches.end());
      statements.insert(rule.statements.begin(), rule.statements.end());
    }
  }
  CoverageReport report;
  report.branches_total = rules.coverage->branches_total;
  report.statements_total = rules.coverage->statements_total;
  report.branches_covered = std::min<int>(static_cast<int>(branches.size()), report.branches_total);
  report.statements_covered = std::min<int>(static_cast<int>(statements.size()), report.statements_total);
  return report;
}

std::size_t MockOracle::compile_calls() const {
  std::lock_guard lock(mu_);
  return compile_calls_;
}

std::size_t MockOracle::run_calls() const {
  std::lock_guard lock(mu_);
  return run_calls_;
}

}  // namespace intentest
