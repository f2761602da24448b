#pragma once

#include "intentest/core.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace intentest {

/// Isolated directory holding one program version of one sample.
struct Workspace {
  std::string sample_id;
  ProgramVersion version = ProgramVersion::fixed;
  std::filesystem::path root;
  std::filesystem::path focal_file;  // spliced focal class
  LineSpan focal_span;               // focal method lines within focal_file
  std::string package_name;
  std::string focal_class;
  std::string test_class;
};

struct Diagnostic {
  std::string file;
  int line = 0;
  std::string message;
};

struct CompileReport {
  bool success = false;
  std::vector<Diagnostic> diagnostics;
};

/// "file:line: message" lines, as fed to the repair prompt.
std::string format_diagnostics(const std::vector<Diagnostic>& diagnostics);

struct ExecutionReport {
  std::map<std::string, RunVerdict> per_test;
  std::map<std::string, std::string> messages;
};

struct CoverageReport {
  int branches_covered = 0;
  int branches_total = 0;
  int statements_covered = 0;
  int statements_total = 0;

  friend bool operator==(const CoverageReport&, const CoverageReport&) = default;
};

/// Compiles, runs and measures generated tests against one program version.
/// Implementations accept concurrent calls on distinct workspaces.
class ExecutionOracle {
 public:
  explicit ExecutionOracle(std::filesystem::path workdir) : workdir_(std::move(workdir)) {}
  virtual ~ExecutionOracle() = default;

  virtual std::string id() const = 0;

  /// Writes the focal class with `version` of the method under
  /// <workdir>/<sample id>/workspace/<version>. Idempotent.
  virtual Workspace prepare_workspace(const BenchmarkSample& sample, ProgramVersion version);

  virtual CompileReport compile(const Workspace& ws, const TestSuite& suite) = 0;
  /// Precondition: `suite` compiled in `ws`.
  virtual ExecutionReport run_tests(const Workspace& ws, const TestSuite& suite) = 0;
  /// Precondition: ws.version == fixed and `suite` compiled. Throws CoverageUnavailable.
  virtual CoverageReport measure_coverage(const Workspace& ws, const TestSuite& suite) = 0;

  const std::filesystem::path& workdir() const { return workdir_; }

 protected:
  /// Writes the rendered test class into the workspace and returns its path.
  std::filesystem::path write_test_class(const Workspace& ws, const TestSuite& suite) const;

 private:
  std::filesystem::path workdir_;
};

std::filesystem::path package_dir(std::string_view package_name);

}  // namespace intentest
