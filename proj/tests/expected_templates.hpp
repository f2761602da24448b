#pragma once

// Independent transcription of the five analysis prompt bodies. The shipped
// template files must match these byte for byte.

#include <map>
#include <string>

namespace intentest::testkit {

inline const std::map<std::string, std::string>& expected_analysis_templates() {
  static const std::map<std::string, std::string> templates = {
      {"code_analysis",
       "## Focal Method\n{FOCAL_METHOD}\n## Instruction\nYou are a Senior Java Control Flow Analyst. Analyze the "
       "following focal method to identify all possible logical branches based on its control flow structure. "
       "Focus on static code analysis: extract every execution path, including all conditional branches, loops, "
       "and edge cases. Follow IEEE Structured Testing Guidelines with attention to full path coverage."},
      {"nld_analysis",
       "{CODE_ANALYSIS_OUTPUTS}\n## Summary\n{SUMMARY}\n## Instruction\nYou are a Java Logic Correction Expert. "
       "Given the Summary of the focal method and its previously extracted logical branches, identify and correct "
       "any incorrect or incomplete branches. Ensure the final logical branches align precisely with the described "
       "intention. Add any missing branches and remove or fix semantically incorrect ones."},
      {"test_analysis",
       "## Focal Method\n{FOCAL_METHOD}\n## Candidate Test Cases\n{CANDIDATE_TESTS}\n## Instruction\nYou are a Java "
       "logic analysis expert. Given the test cases, list all logical branches exercised by the test cases, "
       "including conditionals, loops, and exceptions. Focus only on the branches actually triggered during "
       "execution."},
      {"consistency_check",
       "## Correct Logical Branches\n{CORRECT_BRANCH}\n## Test Case Logical Branches\n{TEST_CASE_BRANCH}\n"
       "## Instruction\nYou are a Java testing expert tasked with improving test cases to cover all intended method "
       "behaviors. Given the correct logical branches and the test case logical branches, determine whether they "
       "are semantically consistent. If they are, return \"Consistent\". If not, return \"Inconsistent\"."},
      {"consistency_correction",
       "## Correct Logical Branches\n{CORRECT_BRANCH}\n## Test Case Logical Branches\n{TEST_CASE_BRANCH}\n"
       "## Instruction\nYou are a Java logic correction expert. Based on the correct logical branches of the focal "
       "method, revise the test case logic branches to ensure consistency. Discard any semantically incorrect "
       "branches. Add any missing logical branches based on the correct ones. Retain branches that are "
       "semantically consistent."},
  };
  return templates;
}

inline const char* const kTemplateSpotChecks[] = {
    "Senior Java Control Flow Analyst", "Java Logic Correction Expert", "Java logic analysis expert",
    "return \"Consistent\"", "Discard any semantically incorrect branches"};

}  // namespace intentest::testkit
