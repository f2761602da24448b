#pragma once

#include "intentest/core.hpp"
#include "intentest/oracle.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace intentest {

struct TestOutcome {
  std::string test_id;
  RunVerdict fixed = RunVerdict::unknown;
  RunVerdict buggy = RunVerdict::unknown;
};

/// Final-suite results of one sample on both program versions.
struct SampleOutcome {
  std::string sample_id;
  std::size_t n_tests = 0;
  bool compiled_fixed = false;
  bool compiled_buggy = false;
  std::vector<TestOutcome> tests;
  std::optional<CoverageReport> coverage;  // fixed version, focal method only
  std::vector<std::string> notes;          // degraded oracle steps
};

/// Counts toward CSR: the final suite compiles against the fixed version.
bool suite_compiled(const SampleOutcome& o);
/// Counts toward PR: compiled, non-empty, every test passes on fixed.
bool suite_passes(const SampleOutcome& o);
/// Some test compiles on both versions, passes on fixed and fails (assertion
/// failure, not error) on buggy.
bool defect_detected(const SampleOutcome& o);

/// Compiles and runs the suite on both versions and measures fixed-version
/// coverage. A suite that did not pass validation is not executed at all.
/// Oracle errors become notes, error verdicts or missing coverage.
SampleOutcome evaluate_sample(const BenchmarkSample& sample, const TestSuite& suite, ExecutionOracle& oracle);

struct SampleRow {
  SampleOutcome outcome;
  std::string terminal_state;
  nlohmann::json counters = nlohmann::json::object();
  std::string error;
};

struct MetricsReport {
  double csr = 0, pr = 0, ddr = 0, bc = 0, sc = 0;  // percentages
  std::size_t n_samples = 0;
  std::size_t compiled = 0, passing = 0, detected = 0;
  std::size_t bc_samples = 0, sc_samples = 0;
  bool empty = true;
  bool interrupted = false;
  nlohmann::json config = nlohmann::json::object();
  std::map<std::string, std::size_t> terminal_states;
  std::vector<SampleRow> samples;  // sorted by sample id
};

/// Rates over `dataset_size` samples (0 when the dataset is empty); BC/SC
/// average per-sample focal-method coverage over samples where the
/// respective total is positive.
MetricsReport aggregate(const std::vector<SampleOutcome>& outcomes, std::size_t dataset_size);

nlohmann::json to_json(const MetricsReport& report);

/// Markdown table with one CSR/PR/DDR/BC/SC row per labelled report.json.
std::string render_markdown_table(const std::vector<std::pair<std::string, nlohmann::json>>& rows);
/// Table row plus per-sample detail for a single report.
std::string render_markdown(const MetricsReport& report);

/// Writes report.json and report.md into `dir`.
void write_report(const MetricsReport& report, const std::filesystem::path& dir);

}  // namespace intentest
