#pragma once

#include "intentest/core.hpp"
#include "intentest/llm.hpp"
#include "intentest/oracle.hpp"
#include "intentest/prompts.hpp"

#include <vector>

namespace intentest {

struct RepairRecord {
  int attempt = 0;  // 1-based repair attempt that this compile failure triggered
  std::vector<Diagnostic> diagnostics;
  std::size_t tests_before = 0;
  std::size_t tests_after = 0;
};

struct ValidatedSuite {
  TestSuite suite;
  CompileStatus status = CompileStatus::unknown;
  int repair_attempts = 0;
  int compile_calls = 0;
  std::vector<RepairRecord> history;
};

/// Compile-and-repair loop against `ws` (the buggy workspace). Each failed
/// compile triggers one repair call, at most cfg.max_iter_val of them; a
/// repair reply yielding no tests keeps the previous suite. The suite never
/// grows. Precondition: suite non-empty.
ValidatedSuite validate_suite(TestSuite suite, const BenchmarkSample& sample, const PipelineConfig& cfg,
                              LlmSession& session, ExecutionOracle& oracle, const Workspace& ws,
                              const PromptCatalog& catalog);

}  // namespace intentest
