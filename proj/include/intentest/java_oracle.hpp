#pragma once

#include "intentest/oracle.hpp"
#include "intentest/subprocess.hpp"

#include <chrono>
#include <string_view>

namespace intentest {

struct JavaToolchainConfig {
  std::string javac = "javac";
  std::string java = "java";
  std::filesystem::path junit_console_jar;  // junit-platform-console-standalone
  std::filesystem::path jacoco_agent_jar;   // jacocoagent.jar (runtime agent)
  std::filesystem::path jacoco_cli_jar;     // jacococli.jar
  std::vector<std::filesystem::path> classpath;
  std::chrono::seconds test_timeout{60};
  std::chrono::seconds compile_timeout{300};
  int max_processes = 4;
};

struct DoctorCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// javac + JUnit console launcher + JaCoCo. Every external process goes
/// through one shared ProcessLimiter.
class JavaOracle : public ExecutionOracle {
 public:
  JavaOracle(std::filesystem::path workdir, JavaToolchainConfig config);

  std::string id() const override { return "java"; }

  /// Availability of every external tool the adapter needs.
  static std::vector<DoctorCheck> doctor(const JavaToolchainConfig& config);
  static bool toolchain_ready(const JavaToolchainConfig& config);

  CompileReport compile(const Workspace& ws, const TestSuite& suite) override;
  ExecutionReport run_tests(const Workspace& ws, const TestSuite& suite) override;
  CoverageReport measure_coverage(const Workspace& ws, const TestSuite& suite) override;

  /// Command lines, exposed for tests.
  std::vector<std::string> javac_command(const Workspace& ws, const std::filesystem::path& test_file) const;
  std::vector<std::string> junit_command(const Workspace& ws, const std::filesystem::path& reports_dir,
                                         const std::filesystem::path* jacoco_exec) const;

 private:
  std::string classpath_string(const Workspace& ws) const;
  ProcessResult run_limited(const std::vector<std::string>& argv, const std::filesystem::path& cwd,
                            std::chrono::milliseconds timeout);
  std::chrono::milliseconds suite_timeout(const TestSuite& suite) const;

  JavaToolchainConfig config_;
  ProcessLimiter limiter_;
};

/// `File.java:12: error: message` lines from javac output.
std::vector<Diagnostic> parse_javac_diagnostics(std::string_view output);

/// Per-test verdicts from a JUnit legacy XML report. <failure> maps to fail,
/// <error>/<skipped> and tests absent from the report map to error.
ExecutionReport parse_junit_xml(std::string_view xml, const std::vector<std::string>& test_ids);

/// Line counters of `source_file` (in `package_path`, slash separated)
/// restricted to `span`. Throws CoverageUnavailable if the file is absent or
/// the XML cannot be parsed.
CoverageReport parse_jacoco_xml(std::string_view xml, std::string_view package_path,
                                std::string_view source_file, LineSpan span);

}  // namespace intentest
