#pragma once

#include "intentest/core.hpp"
#include "intentest/llm.hpp"
#include "intentest/prompts.hpp"

#include <string_view>

namespace intentest {

struct CorrectBranches {
  BranchSet code_derived;  // round 1
  BranchSet correct;       // round 2
};

/// Code analysis of the buggy method, then NLD correction. Each round retries
/// once on an unparseable reply; throws EmptyBranchSet after that.
CorrectBranches derive_correct_branches(const BenchmarkSample& sample, LlmSession& session,
                                        const PromptCatalog& catalog);

/// Branches the suite exercises. Precondition: suite non-empty.
/// Throws EmptyBranchSet after one retry.
BranchSet derive_test_branches(const BenchmarkSample& sample, const TestSuite& suite, LlmSession& session,
                               const PromptCatalog& catalog);

/// Case-insensitive; "inconsistent" wins over "consistent"; anything else
/// is inconsistent.
Verdict parse_verdict(std::string_view reply);

ConsistencyVerdict judge_consistency(const BranchSet& correct, const BranchSet& test, LlmSession& session,
                                     const PromptCatalog& catalog);

/// Corrected test branches. Falls back to `correct` (relabelled finalized)
/// when the reply and its retry hold no branches.
BranchSet finalize_branches(const BranchSet& correct, const BranchSet& test, LlmSession& session,
                            const PromptCatalog& catalog);

}  // namespace intentest
