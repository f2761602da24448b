#include "intentest/generator.hpp"
#include "intentest/metrics.hpp"
#include "intentest/mock_oracle.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace intentest;

namespace {

SampleOutcome outcome(bool fixed_ok, bool buggy_ok, std::vector<std::pair<RunVerdict, RunVerdict>> tests) {
  SampleOutcome o;
  o.compiled_fixed = fixed_ok;
  o.compiled_buggy = buggy_ok;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    o.tests.push_back({"t" + std::to_string(i), tests[i].first, tests[i].second});
  }
  o.n_tests = o.tests.size();
  return o;
}

constexpr auto P = RunVerdict::pass;
constexpr auto F = RunVerdict::fail;
constexpr auto E = RunVerdict::error;

}  // namespace

TEST(Metrics, DetectionRequiresAssertionFailureOnBuggy) {
  EXPECT_TRUE(defect_detected(outcome(true, true, {{P, F}})));
  EXPECT_FALSE(defect_detected(outcome(true, true, {{P, E}})));
  EXPECT_FALSE(defect_detected(outcome(true, true, {{F, F}})));
  EXPECT_FALSE(defect_detected(outcome(true, true, {{P, P}})));
  EXPECT_FALSE(defect_detected(outcome(true, false, {{P, F}})));
  EXPECT_FALSE(defect_detected(outcome(false, true, {{P, F}})));
  EXPECT_TRUE(defect_detected(outcome(true, true, {{F, P}, {P, F}})));
}

TEST(Metrics, PassRequiresNonEmptyAllPassing) {
  EXPECT_TRUE(suite_passes(outcome(true, false, {{P, F}, {P, E}})));
  EXPECT_FALSE(suite_passes(outcome(true, true, {})));
  EXPECT_FALSE(suite_passes(outcome(true, true, {{P, P}, {E, P}})));
  EXPECT_FALSE(suite_passes(outcome(false, true, {{P, P}})));
  EXPECT_TRUE(suite_compiled(outcome(true, false, {})));
}

TEST(Metrics, RatesOverDatasetSize) {
  std::vector<SampleOutcome> outcomes;
  for (int i = 0; i < 40; ++i) {
    auto o = outcome(i < 34, true, {{P, i < 10 ? F : P}});
    o.sample_id = "s" + std::to_string(100 + i);
    outcomes.push_back(o);
  }
  auto r = aggregate(outcomes, 40);
  EXPECT_DOUBLE_EQ(r.csr, 85.0);
  EXPECT_DOUBLE_EQ(r.pr, 85.0);
  EXPECT_DOUBLE_EQ(r.ddr, 25.0);
  EXPECT_EQ(r.compiled, 34u);
}

TEST(Metrics, MissingOutcomesCountAgainstTheDataset) {
  std::vector<SampleOutcome> outcomes = {outcome(true, true, {{P, F}}), outcome(true, true, {{P, F}})};
  auto r = aggregate(outcomes, 5);
  EXPECT_DOUBLE_EQ(r.ddr, 40.0);
  EXPECT_THROW(aggregate(outcomes, 1), std::invalid_argument);
  auto empty = aggregate({}, 0);
  EXPECT_TRUE(empty.empty);
  EXPECT_EQ(empty.csr, 0.0);
}

TEST(Metrics, CoverageAveragesPerSample) {
  auto a = outcome(true, true, {{P, P}});
  a.coverage = CoverageReport{1, 2, 3, 4};
  auto b = outcome(true, true, {{P, P}});
  b.coverage = CoverageReport{9, 10, 0, 0};
  auto c = outcome(true, true, {{P, P}});
  auto r = aggregate({a, b, c}, 3);
  EXPECT_DOUBLE_EQ(r.bc, 70.0);  // (50 + 90) / 2, not 10 / 12
  EXPECT_DOUBLE_EQ(r.sc, 75.0);
  EXPECT_EQ(r.bc_samples, 2u);
  EXPECT_EQ(r.sc_samples, 1u);
}

TEST(Metrics, MatchesReferenceOnRandomMatrices) {
  std::mt19937 rng(1234);
  for (int iter = 0; iter < 500; ++iter) {
    const auto n = std::uniform_int_distribution<std::size_t>(0, 30)(rng);
    auto outcomes = testkit::random_outcomes(rng, n);
    const auto size = n + std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    auto r = aggregate(outcomes, size);
    auto ref = testkit::reference_rates(outcomes, size);
    ASSERT_EQ(r.compiled, ref.compiled);
    ASSERT_EQ(r.passing, ref.passing);
    ASSERT_EQ(r.detected, ref.detected);
    ASSERT_EQ(r.csr, ref.csr);
    ASSERT_EQ(r.pr, ref.pr);
    ASSERT_EQ(r.ddr, ref.ddr);
    ASSERT_EQ(r.bc, ref.bc);
    ASSERT_EQ(r.sc, ref.sc);
    ASSERT_LE(r.pr, r.csr);
    ASSERT_LE(r.ddr, r.csr);
  }
}

TEST(Metrics, AddingADetectingSampleNeverLowersDdr) {
  std::mt19937 rng(99);
  for (int iter = 0; iter < 200; ++iter) {
    auto outcomes = testkit::random_outcomes(rng, 10);
    auto before = aggregate(outcomes, 11);
    outcomes.push_back(outcome(true, true, {{P, F}}));
    outcomes.back().sample_id = "zz";
    auto after = aggregate(outcomes, 11);
    ASSERT_EQ(after.detected, before.detected + 1);
    ASSERT_GT(after.ddr, before.ddr);
  }
}

TEST(Metrics, SamplesSortedAndJsonShape) {
  auto a = outcome(true, true, {{P, F}});
  a.sample_id = "b";
  auto b = outcome(false, false, {});
  b.sample_id = "a";
  auto r = aggregate({a, b}, 2);
  auto j = to_json(r);
  EXPECT_EQ(j["samples"][0]["id"], "a");
  EXPECT_EQ(j["samples"][1]["detected"], true);
  for (const char* key : {"interpretation", "config", "n_samples", "empty", "interrupted", "metrics", "counts",
                          "terminal_states", "samples"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["metrics"]["ddr"], 50.0);
  auto table = render_markdown_table({{"x", j}});
  EXPECT_NE(table.find("| x | 2 | 50.00% | 50.00% | 50.00% | 0.00% | 0.00% |"), std::string::npos);
}

TEST(Metrics, EvaluateSampleWithMockOracle) {
  MockOracle oracle(testkit::scratch_dir("metrics_eval"));
  auto sample = testkit::is_simple_number();
  oracle.load_rules(sample.id, testkit::fixture("datasets/isSimpleNumber/isSimpleNumber"));
  auto suite = make_suite(extract_tests(testkit::java_reply({{"zero", "assertTrue(JsonWriter.isSimpleNumber(\"0\"));"},
                                                              {"nil", "assertFalse(JsonWriter.isSimpleNumber(null));"}}),
                                        5),
                          TestOrigin::initial, 0);
  auto unvalidated = evaluate_sample(sample, suite, oracle);
  EXPECT_FALSE(unvalidated.compiled_fixed);
  EXPECT_EQ(oracle.compile_calls(), 0u);

  for (auto& t : suite.tests) t.set_compile_status(CompileStatus::ok);
  auto o = evaluate_sample(sample, suite, oracle);
  EXPECT_TRUE(o.compiled_fixed);
  EXPECT_TRUE(o.compiled_buggy);
  EXPECT_EQ(o.tests[0].fixed, RunVerdict::pass);
  EXPECT_EQ(o.tests[0].buggy, RunVerdict::fail);
  EXPECT_TRUE(defect_detected(o));
  ASSERT_TRUE(o.coverage.has_value());
  // {2,3,5,7,8} u {1}; statements {1,3,5,6,7,9} u {1,2}
  EXPECT_EQ(*o.coverage, (CoverageReport{6, 10, 7, 9}));
}

TEST(Metrics, WriteReport) {
  auto dir = testkit::scratch_dir("metrics_write");
  auto r = aggregate({}, 0);
  write_report(r, dir);
  EXPECT_EQ(testkit::read_text(dir / "report.json"), to_json(r).dump(2) + "\n");
  EXPECT_NE(testkit::read_text(dir / "report.md").find("The dataset is empty"), std::string::npos);
}
