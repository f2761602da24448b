#include "intentest/analyzer.hpp"
#include "intentest/errors.hpp"
#include "intentest/generator.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace intentest;

TEST(Verdict, Parsing) {
  EXPECT_EQ(parse_verdict("Consistent"), Verdict::consistent);
  EXPECT_EQ(parse_verdict("The branches are CONSISTENT."), Verdict::consistent);
  EXPECT_EQ(parse_verdict("Inconsistent"), Verdict::inconsistent);
  EXPECT_EQ(parse_verdict("not consistent: inconsistent"), Verdict::inconsistent);
  EXPECT_EQ(parse_verdict(""), Verdict::inconsistent);
  EXPECT_EQ(parse_verdict("maybe"), Verdict::inconsistent);
}

TEST(Analyzer, CorrectBranchesFeedRawRoundOneReply) {
  auto sample = testkit::is_simple_number();
  const std::string round1 = "Some preamble.\n" + testkit::branch_reply({"null input", "empty input"});
  ScriptedBackend b;
  b.push("code_analysis", round1);
  b.push("nld_analysis", testkit::branch_reply({"null input", "empty input", "single zero"}));
  LlmSession s(b, 0.0);
  auto cb = derive_correct_branches(sample, s, PromptCatalog::builtin());
  EXPECT_EQ(cb.code_derived.kind, BranchSetKind::code_derived);
  EXPECT_EQ(cb.code_derived.size(), 2u);
  EXPECT_EQ(cb.correct.kind, BranchSetKind::correct);
  EXPECT_EQ(cb.correct.size(), 3u);
  ASSERT_EQ(b.call_count(), 2u);
  auto calls = b.calls();
  EXPECT_NE(calls[0].prompt.find(sample.buggy_source), std::string::npos);
  EXPECT_NE(calls[1].prompt.find(round1), std::string::npos);
  EXPECT_NE(calls[1].prompt.find(sample.nld), std::string::npos);
}

TEST(Analyzer, RetryOnceThenEmptyBranchSet) {
  auto sample = testkit::is_simple_number();
  {
    ScriptedBackend b;
    b.push("code_analysis", "no branches");
    b.push("code_analysis", testkit::branch_reply({"x"}));
    b.push("nld_analysis", testkit::branch_reply({"y"}));
    LlmSession s(b, 0.0);
    EXPECT_EQ(derive_correct_branches(sample, s, PromptCatalog::builtin()).correct.branches[0].text, "y");
    EXPECT_EQ(s.call_count("code_analysis"), 2u);
  }
  {
    ScriptedBackend b;
    b.push("code_analysis", testkit::branch_reply({"x"}));
    b.push("nld_analysis", "nothing");
    b.push("nld_analysis", "nothing again");
    LlmSession s(b, 0.0);
    EXPECT_THROW(derive_correct_branches(sample, s, PromptCatalog::builtin()), EmptyBranchSet);
    EXPECT_EQ(s.call_count("nld_analysis"), 2u);
  }
}

TEST(Analyzer, TestBranchesUseConcatenatedSources) {
  auto sample = testkit::is_simple_number();
  auto suite = make_suite(extract_tests(testkit::java_reply({{"a", "f(1);"}, {"b", "f(2);"}}), 5),
                          TestOrigin::initial, 0);
  ScriptedBackend b({testkit::branch_reply({"one", "two"})});
  LlmSession s(b, 0.0);
  auto tb = derive_test_branches(sample, suite, s, PromptCatalog::builtin());
  EXPECT_EQ(tb.kind, BranchSetKind::test_case);
  EXPECT_EQ(s.call_count("test_analysis"), 1u);
  EXPECT_NE(b.calls()[0].prompt.find(concatenated_sources(suite)), std::string::npos);
  EXPECT_THROW(derive_test_branches(sample, TestSuite{}, s, PromptCatalog::builtin()), std::invalid_argument);
}

TEST(Analyzer, JudgeAndFinalize) {
  BranchSet correct = parse_branch_set(testkit::branch_reply({"a", "b"}), BranchSetKind::correct);
  BranchSet tests = parse_branch_set(testkit::branch_reply({"a"}), BranchSetKind::test_case);
  ScriptedBackend b;
  b.push("consistency_check", "Inconsistent");
  b.push("consistency_correction", testkit::branch_reply({"a", "b fixed"}));
  LlmSession s(b, 0.0);
  auto v = judge_consistency(correct, tests, s, PromptCatalog::builtin());
  EXPECT_EQ(v.verdict, Verdict::inconsistent);
  EXPECT_EQ(v.raw_reply, "Inconsistent");
  EXPECT_NE(b.calls()[0].prompt.find(serialize_branch_set(correct)), std::string::npos);
  EXPECT_NE(b.calls()[0].prompt.find(serialize_branch_set(tests)), std::string::npos);
  auto fin = finalize_branches(correct, tests, s, PromptCatalog::builtin());
  EXPECT_EQ(fin.kind, BranchSetKind::finalized);
  EXPECT_EQ(fin.branches[1].text, "b fixed");
}

TEST(Analyzer, FinalizeFallsBackToCorrectSet) {
  BranchSet correct = parse_branch_set(testkit::branch_reply({"a", "b"}), BranchSetKind::correct);
  BranchSet tests = parse_branch_set(testkit::branch_reply({"a"}), BranchSetKind::test_case);
  ScriptedBackend b({"garbage", "more garbage"});
  LlmSession s(b, 0.0);
  auto fin = finalize_branches(correct, tests, s, PromptCatalog::builtin());
  EXPECT_EQ(s.call_count("consistency_correction"), 2u);
  EXPECT_EQ(fin.kind, BranchSetKind::finalized);
  EXPECT_EQ(serialize_branch_set(fin), serialize_branch_set(correct));
}
