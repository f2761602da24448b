#pragma once

#include "intentest/core.hpp"
#include "intentest/llm.hpp"
#include "intentest/prompts.hpp"

#include <string_view>
#include <vector>

namespace intentest {

/// Up to `n` annotated test methods from a model reply, in reply order.
/// Fenced code blocks are scanned first; a reply without fences is scanned
/// as raw text. Every test carries the imports and non-test members of the
/// block it came from. Duplicate method names are suffixed `_2`, `_3`, ...
/// and test_id equals the (possibly renamed) method name.
std::vector<GeneratedTest> extract_tests(std::string_view reply, int n);

/// Assembles a suite from extracted tests, stamping origin and round.
TestSuite make_suite(std::vector<GeneratedTest> tests, TestOrigin origin, int refinement_round);

/// Test sources joined by blank lines, as shown to the model.
std::string concatenated_sources(const TestSuite& suite);

/// Renders the generation prompt for a sample.
std::string generation_prompt(const BenchmarkSample& sample, const PromptCatalog& catalog);

/// One generation call (plus one retry with the same prompt when nothing
/// could be extracted). Throws NoTestsExtracted after the retry.
TestSuite generate_candidates(const BenchmarkSample& sample, const PipelineConfig& cfg,
                              LlmSession& session, const PromptCatalog& catalog);

}  // namespace intentest
