#pragma once

#include "intentest/core.hpp"
#include "intentest/llm.hpp"
#include "intentest/metrics.hpp"
#include "intentest/oracle.hpp"
#include "intentest/prompts.hpp"

#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace intentest {

enum class TerminalState { consistent, iteration_cap, generation_failed, analysis_failed, aborted };

std::string_view to_string(TerminalState s);

struct SampleCounters {
  int repair_attempts_total = 0;
  int refinement_rounds = 0;
  int analyzer_rounds = 0;
  int backend_calls = 0;
};

struct SampleResult {
  std::string sample_id;
  TestSuite final_suite;
  std::vector<TestSuite> suite_history;  // every validated suite, initial first
  SampleOutcome outcome;
  SampleCounters counters;
  TerminalState terminal_state = TerminalState::aborted;
  std::optional<Verdict> last_verdict;
  std::string error;
  std::vector<nlohmann::json> events;
};

/// Upper bound on backend calls for one sample:
/// generation 2 (with retry), initial repairs V, correct branches 4 (two
/// rounds with retry), then per analyzer round: test analysis 2, judge 1,
/// finalize 2, refinement 2, repairs V.
int backend_call_budget(const PipelineConfig& cfg);

/// Generator, Validator, Analyzer and refinement for one sample, followed by
/// evaluation of the final suite. Never throws for pipeline failures; they
/// map to the terminal state. Writes <cfg.workdir>/<id>/events.jsonl when
/// cfg.workdir is non-empty.
SampleResult run_sample(const BenchmarkSample& sample, const PipelineConfig& cfg, Backend& backend,
                        ExecutionOracle& oracle, const PromptCatalog& catalog = PromptCatalog::builtin());

struct BenchmarkRun {
  MetricsReport report;
  std::vector<SampleResult> results;  // sorted by sample id
};

/// Configuration fields echoed into report.json. Paths, backend and worker
/// count are left out so that record/replay runs and different pool sizes
/// produce identical reports.
nlohmann::json config_echo(const PipelineConfig& cfg);

/// run_sample over every sample with cfg.worker_count workers. When `stop`
/// becomes true, samples not yet started are recorded as aborted.
BenchmarkRun run_benchmark(const std::vector<BenchmarkSample>& samples, const PipelineConfig& cfg, Backend& backend,
                           ExecutionOracle& oracle, const PromptCatalog& catalog = PromptCatalog::builtin(),
                           const std::atomic<bool>* stop = nullptr);

}  // namespace intentest
