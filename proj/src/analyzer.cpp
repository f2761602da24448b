#include "intentest/analyzer.hpp"

#include "intentest/errors.hpp"
#include "intentest/generator.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace intentest {
namespace {

struct BranchReply {
  std::string raw;
  BranchSet set;
};

BranchReply ask_for_branches(LlmSession& session, const std::string& tag, const std::string& prompt,
                             BranchSetKind kind) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    auto reply = session.ask(tag, prompt);
    try {
      auto set = parse_branch_set(reply, kind);
      return {std::move(reply), std::move(set)};
    } catch (const EmptyBranchSet&) {
    }
  }
  throw EmptyBranchSet();
}

}  // namespace

CorrectBranches derive_correct_branches(const BenchmarkSample& sample, LlmSession& session,
                                        const PromptCatalog& catalog) {
  auto round1 = ask_for_branches(
      session, "code_analysis",
      catalog.render(TemplateId::code_analysis, {{"FOCAL_METHOD", sample.buggy_source}}),
      BranchSetKind::code_derived);
  auto round2 = ask_for_branches(
      session, "nld_analysis",
      catalog.render(TemplateId::nld_analysis, {{"CODE_ANALYSIS_OUTPUTS", round1.raw}, {"SUMMARY", sample.nld}}),
      BranchSetKind::correct);
  return {std::move(round1.set), std::move(round2.set)};
}

BranchSet derive_test_branches(const BenchmarkSample& sample, const TestSuite& suite, LlmSession& session,
                               const PromptCatalog& catalog) {
  if (suite.empty()) throw std::invalid_argument("derive_test_branches: empty suite");
  auto prompt = catalog.render(TemplateId::test_analysis, {{"FOCAL_METHOD", sample.buggy_source},
                                                           {"CANDIDATE_TESTS", concatenated_sources(suite)}});
  return ask_for_branches(session, "test_analysis", prompt, BranchSetKind::test_case).set;
}

Verdict parse_verdict(std::string_view reply) {
  std::string lower(reply);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower.find("inconsistent") != std::string::npos) return Verdict::inconsistent;
  if (lower.find("consistent") != std::string::npos) return Verdict::consistent;
  return Verdict::inconsistent;
}

ConsistencyVerdict judge_consistency(const BranchSet& correct, const BranchSet& test, LlmSession& session,
                                     const PromptCatalog& catalog) {
  auto prompt = catalog.render(TemplateId::consistency_check,
                               {{"CORRECT_BRANCH", serialize_branch_set(correct)},
                                {"TEST_CASE_BRANCH", serialize_branch_set(test)}});
  auto reply = session.ask("consistency_check", prompt);
  return {parse_verdict(reply), std::move(reply)};
}

BranchSet finalize_branches(const BranchSet& correct, const BranchSet& test, LlmSession& session,
                            const PromptCatalog& catalog) {
  auto prompt = catalog.render(TemplateId::consistency_correction,
                               {{"CORRECT_BRANCH", serialize_branch_set(correct)},
                                {"TEST_CASE_BRANCH", serialize_branch_set(test)}});
  try {
    return ask_for_branches(session, "consistency_correction", prompt, BranchSetKind::finalized).set;
  } catch (const EmptyBranchSet&) {
    BranchSet fallback = correct;
    fallback.kind = BranchSetKind::finalized;
    return fallback;
  }
}

}  // namespace intentest
