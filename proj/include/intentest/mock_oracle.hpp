#pragma once

#include "intentest/oracle.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <set>

#include <nlohmann/json.hpp>

namespace intentest {

/// Declarative outcomes for one sample, read from `oracle.mock.json`:
///
///   {
///     "compile_errors": [{"marker": "//BAD", "message": "...", "versions": ["buggy"]}],
///     "run": [{"marker": "isSimpleNumber(\"0\")", "fixed": "pass", "buggy": "fail",
///              "message": "..."}],
///     "default": {"fixed": "pass", "buggy": "pass"},
///     "coverage": {"branches_total": 14, "statements_total": 11,
///                  "rules": [{"marker": "...", "branches": [1, 2], "statements": [1]}]}
///   }
///
/// Markers are plain substrings. A compile rule fires when its marker occurs
/// anywhere in the rendered test class; the first run rule whose marker
/// occurs in a test method decides that test; coverage is the union of the
/// ids of every coverage rule matched by any test.
struct MockRules {
  struct CompileRule {
    std::string marker;
    std::string message = "cannot find symbol";
    std::set<ProgramVersion> versions = {ProgramVersion::buggy, ProgramVersion::fixed};
  };
  struct RunRule {
    std::string marker;
    RunVerdict fixed = RunVerdict::pass;
    RunVerdict buggy = RunVerdict::pass;
    std::string message;
  };
  struct CoverageRule {
    std::string marker;
    std::set<int> branches;
    std::set<int> statements;
  };
  struct Coverage {
    int branches_total = 0;
    int statements_total = 0;
    std::vector<CoverageRule> rules;
  };

  std::vector<CompileRule> compile_errors;
  std::vector<RunRule> run;
  RunVerdict default_fixed = RunVerdict::pass;
  RunVerdict default_buggy = RunVerdict::pass;
  std::optional<Coverage> coverage;

  static MockRules from_json(const nlohmann::json& j);
};

/// Deterministic oracle driven by MockRules; never spawns processes.
class MockOracle : public ExecutionOracle {
 public:
  explicit MockOracle(std::filesystem::path workdir) : ExecutionOracle(std::move(workdir)) {}

  std::string id() const override { return "mock"; }

  void set_rules(const std::string& sample_id, MockRules rules);
  /// Loads `<sample_dir>/oracle.mock.json` when present.
  void load_rules(const std::string& sample_id, const std::filesystem::path& sample_dir);

  CompileReport compile(const Workspace& ws, const TestSuite& suite) override;
  ExecutionReport run_tests(const Workspace& ws, const TestSuite& suite) override;
  CoverageReport measure_coverage(const Workspace& ws, const TestSuite& suite) override;

  std::size_t compile_calls() const;
  std::size_t run_calls() const;

 private:
  MockRules rules_for(const std::string& sample_id) const;
  CompileReport check_compile(const Workspace& ws, const TestSuite& suite) const;

  mutable std::mutex mu_;
  std::map<std::string, MockRules> rules_;
  std::size_t compile_calls_ = 0;
  std::size_t run_calls_ = 0;
};

}  // namespace intentest
