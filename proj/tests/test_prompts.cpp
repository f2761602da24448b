#include "intentest/errors.hpp"
#include "intentest/prompts.hpp"

#include "expected_templates.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace intentest;

TEST(Prompts, TemplateIdsRoundTrip) {
  EXPECT_EQ(all_template_ids().size(), 8u);
  for (auto id : all_template_ids()) EXPECT_EQ(template_id_from_string(to_string(id)), id);
  EXPECT_THROW(template_id_from_string("nope"), UnknownTemplate);
}

TEST(Prompts, AnalysisTemplateFilesMatchTranscription) {
  for (const auto& [name, body] : testkit::expected_analysis_templates()) {
    auto file = testkit::read_text(testkit::source_dir() / "templates" / (name + ".txt"));
    EXPECT_EQ(file, body + "\n") << name;
    EXPECT_EQ(PromptCatalog::builtin().get(template_id_from_string(name)).body(), body) << name;
  }
}

TEST(Prompts, BuiltinCatalogMatchesEveryTemplateFile) {
  for (auto id : all_template_ids()) {
    auto file = testkit::read_text(testkit::source_dir() / "templates" / (std::string(to_string(id)) + ".txt"));
    EXPECT_EQ(PromptCatalog::builtin().get(id).body(), normalize_template_text(file)) << to_string(id);
  }
}

TEST(Prompts, SpotChecks) {
  std::string all;
  for (auto id : all_template_ids()) all += PromptCatalog::builtin().get(id).body();
  for (const char* s : testkit::kTemplateSpotChecks) EXPECT_NE(all.find(s), std::string::npos) << s;
}

TEST(Prompts, Placeholders) {
  const auto& c = PromptCatalog::builtin();
  using S = std::set<std::string>;
  EXPECT_EQ(c.get(TemplateId::code_analysis).required_placeholders(), S{"FOCAL_METHOD"});
  EXPECT_EQ(c.get(TemplateId::nld_analysis).required_placeholders(), (S{"CODE_ANALYSIS_OUTPUTS", "SUMMARY"}));
  EXPECT_EQ(c.get(TemplateId::test_analysis).required_placeholders(), (S{"FOCAL_METHOD", "CANDIDATE_TESTS"}));
  EXPECT_EQ(c.get(TemplateId::consistency_check).required_placeholders(), (S{"CORRECT_BRANCH", "TEST_CASE_BRANCH"}));
  EXPECT_EQ(c.get(TemplateId::consistency_correction).required_placeholders(),
            (S{"CORRECT_BRANCH", "TEST_CASE_BRANCH"}));
  EXPECT_EQ(c.get(TemplateId::generation).required_placeholders(), (S{"FOCAL_METHOD", "SUMMARY", "CLASS_CONTEXT"}));
  EXPECT_EQ(c.get(TemplateId::repair).required_placeholders(),
            (S{"TEST_CLASS", "COMPILE_ERRORS", "FOCAL_METHOD", "CLASS_CONTEXT"}));
  EXPECT_EQ(c.get(TemplateId::refinement).required_placeholders(),
            (S{"FOCAL_METHOD", "SUMMARY", "FINALIZED_BRANCH", "CANDIDATE_TESTS"}));
}

TEST(Prompts, RenderSubstitutesOnceWithoutRescanning) {
  PromptTemplate t(TemplateId::code_analysis, "A {X} B {Y} {X}");
  EXPECT_EQ(t.render({{"X", "{Y}"}, {"Y", "y"}}), "A {Y} B y {Y}");
}

TEST(Prompts, RenderLeavesJavaBracesAlone) {
  PromptTemplate t(TemplateId::code_analysis, "{FOCAL_METHOD}");
  const std::string method = "int f() { return {1}; } {lower} {A-B}";
  EXPECT_EQ(t.render({{"FOCAL_METHOD", method}}), method);
  PromptTemplate literal(TemplateId::code_analysis, "keep {lower} and {A-B} but fill {V}");
  EXPECT_EQ(literal.required_placeholders(), std::set<std::string>{"V"});
  EXPECT_EQ(literal.render({{"V", "v"}}), "keep {lower} and {A-B} but fill v");
}

TEST(Prompts, RenderRejectsMissingAndUnknownBindings) {
  PromptTemplate t(TemplateId::code_analysis, "{A} {B}");
  try {
    t.render({{"A", "a"}});
    FAIL();
  } catch (const MissingPlaceholder& e) {
    EXPECT_EQ(e.name(), "B");
  }
  try {
    t.render({{"A", "a"}, {"B", "b"}, {"C", "c"}});
    FAIL();
  } catch (const UnknownPlaceholder& e) {
    EXPECT_EQ(e.name(), "C");
  }
}

TEST(Prompts, NormalizeTemplateText) {
  EXPECT_EQ(normalize_template_text("a\r\nb\rc\n"), "a\nb\nc");
  EXPECT_EQ(normalize_template_text("a\n\n"), "a\n");
  EXPECT_EQ(normalize_template_text(""), "");
}

TEST(Prompts, LoadOverridesSomeTemplates) {
  auto dir = testkit::scratch_dir("prompts");
  testkit::write_text(dir / "code_analysis.txt", "Custom {FOCAL_METHOD}\r\n");
  auto c = PromptCatalog::load(dir);
  EXPECT_EQ(c.get(TemplateId::code_analysis).body(), "Custom {FOCAL_METHOD}");
  EXPECT_EQ(c.get(TemplateId::nld_analysis).body(), PromptCatalog::builtin().get(TemplateId::nld_analysis).body());
  EXPECT_EQ(c.render(TemplateId::code_analysis, {{"FOCAL_METHOD", "m"}}), "Custom m");
}
