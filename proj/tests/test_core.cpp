#include "intentest/core.hpp"
#include "intentest/errors.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace intentest;

TEST(Core, DeclaredClassName) {
  EXPECT_EQ(declared_class_name("public class JsonWriter implements Closeable"), "JsonWriter");
  EXPECT_EQ(declared_class_name("final class A<T> extends B"), "A");
  EXPECT_EQ(declared_class_name("public interface Shape"), "Shape");
  EXPECT_EQ(declared_class_name("public static"), "");
}

TEST(Core, MethodNameFromSignature) {
  BenchmarkSample s;
  s.focal_signature = "public static boolean isSimpleNumber(String s)";
  EXPECT_EQ(s.method_name(), "isSimpleNumber");
  s.focal_signature = "<T> List<T> copy (List<T> in)";
  EXPECT_EQ(s.method_name(), "copy");
}

TEST(Core, RunVerdictStrings) {
  for (auto v : {RunVerdict::unknown, RunVerdict::pass, RunVerdict::fail, RunVerdict::error}) {
    EXPECT_EQ(run_verdict_from_string(to_string(v)), v);
  }
  EXPECT_THROW(run_verdict_from_string("passed"), std::invalid_argument);
}

TEST(Core, CompileStatusNeverReturnsToUnknown) {
  GeneratedTest t;
  t.set_compile_status(CompileStatus::ok);
  EXPECT_THROW(t.set_compile_status(CompileStatus::unknown), std::logic_error);
  t.run_fixed = RunVerdict::pass;
  t.set_compile_status(CompileStatus::failed);
  EXPECT_EQ(t.run_fixed, RunVerdict::unknown);
  EXPECT_TRUE(t.lifecycle_consistent());
}

TEST(Core, RepairAttemptsOnlyGrow) {
  GeneratedTest t;
  t.set_repair_attempts(2);
  t.set_repair_attempts(2);
  EXPECT_THROW(t.set_repair_attempts(1), std::logic_error);
}

TEST(Core, RunVerdictsRequireCompilation) {
  GeneratedTest t;
  t.run_fixed = RunVerdict::pass;
  EXPECT_FALSE(t.lifecycle_consistent());
  t.compile_status = CompileStatus::ok;
  EXPECT_TRUE(t.lifecycle_consistent());
}

TEST(Core, BranchSetValidity) {
  auto bs = BranchSet::from_texts(BranchSetKind::correct, {"a", "b"});
  EXPECT_TRUE(bs.valid());
  bs.branches[1].index = 3;
  EXPECT_FALSE(bs.valid());
  EXPECT_FALSE(BranchSet::from_texts(BranchSetKind::correct, {" padded"}).valid());
  EXPECT_FALSE(BranchSet::from_texts(BranchSetKind::correct, {"two\nlines"}).valid());
  EXPECT_FALSE(BranchSet::from_texts(BranchSetKind::correct, {""}).valid());
}

TEST(Core, SerializeBranchSet) {
  auto bs = BranchSet::from_texts(BranchSetKind::correct, {"s is null, returns false.", "otherwise true."});
  EXPECT_EQ(serialize_branch_set(bs), "Branch 1: s is null, returns false.\nBranch 2: otherwise true.");
}

TEST(Core, ParseBranchSetToleratesMarkup) {
  const std::string reply =
      "Here is the analysis.\n"
      "- **Branch 1:** s is null\n"
      "2. Branch 2 - s is empty\n"
      "### Branch 7) digits only\n"
      "* __branch 4__: leading zero\n"
      "Not a branch line\n"
      "Branch5: no space before the number is fine\n"
      "Branches: ignored\n";
  auto bs = parse_branch_set(reply, BranchSetKind::test_case);
  EXPECT_EQ(bs.kind, BranchSetKind::test_case);
  EXPECT_EQ(bs.texts(), (std::vector<std::string>{"s is null", "s is empty", "digits only", "leading zero",
                                                  "no space before the number is fine"}));
  EXPECT_TRUE(bs.valid());
}

TEST(Core, ParseBranchSetKeepsInnerMarkup) {
  auto bs = parse_branch_set("Branch 1: uses a*b and _x_ literally*", BranchSetKind::correct);
  EXPECT_EQ(bs.texts().at(0), "uses a*b and _x_ literally*");
}

TEST(Core, ParseBranchSetEmpty) {
  EXPECT_THROW(parse_branch_set("I could not find any branches.", BranchSetKind::correct), EmptyBranchSet);
  EXPECT_THROW(parse_branch_set("", BranchSetKind::correct), EmptyBranchSet);
  EXPECT_THROW(parse_branch_set("Branch 1:   \n", BranchSetKind::correct), EmptyBranchSet);
}

// Property: parse(serialize(b)) == b for every valid branch set.
TEST(Core, BranchSetRoundTripProperty) {
  std::mt19937 rng(20240611);
  const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 .,:;-_*#()[]{}'\"<>=!?/\\|&^%$@~`+";
  std::uniform_int_distribution<int> count(1, 12), length(1, 60);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (int iter = 0; iter < 2000; ++iter) {
    std::vector<std::string> texts;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      std::string t;
      const int len = length(rng);
      for (int k = 0; k < len; ++k) t.push_back(alphabet[pick(rng)]);
      auto b = t.find_first_not_of(' ');
      auto e = t.find_last_not_of(' ');
      t = b == std::string::npos ? "x" : t.substr(b, e - b + 1);
      texts.push_back(t);
    }
    auto bs = BranchSet::from_texts(BranchSetKind::finalized, texts);
    ASSERT_TRUE(bs.valid());
    auto back = parse_branch_set(serialize_branch_set(bs), BranchSetKind::finalized);
    ASSERT_EQ(back.branches, bs.branches) << serialize_branch_set(bs);
  }
}

TEST(Core, PipelineConfigValidation) {
  PipelineConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.max_iter_val, 5);
  EXPECT_EQ(cfg.max_iter_ana, 5);
  EXPECT_EQ(cfg.n_tests, 5);
  EXPECT_EQ(cfg.temperature, 0.0);
  cfg.n_tests = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.max_iter_ana = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.temperature = -0.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.worker_count = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}
