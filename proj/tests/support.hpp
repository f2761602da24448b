#pragma once

#include "intentest/core.hpp"
#include "intentest/llm.hpp"
#include "intentest/metrics.hpp"
#include "intentest/mock_oracle.hpp"

#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace intentest::testkit {

std::filesystem::path source_dir();
std::filesystem::path fixture(const std::string& relative);

/// Fresh, empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

std::string read_text(const std::filesystem::path& p);
void write_text(const std::filesystem::path& p, const std::string& text);

/// The bundled isSimpleNumber sample.
BenchmarkSample is_simple_number();

/// A fenced ```java block holding a test class with one @Test method per
/// (name, body) pair.
std::string java_reply(const std::vector<std::pair<std::string, std::string>>& tests);

/// "Branch i: text" lines.
std::string branch_reply(const std::vector<std::string>& texts);

/// Test bodies for the isSimpleNumber sample under its mock rules.
inline const std::string kCompilingBody = "assertTrue(JsonWriter.isSimpleNumber(\"123\"));";
inline const std::string kBrokenBody = "assertTrue(JsonWriter.isSimpleNum(\"123\"));";

/// Replies for a whole run on isSimpleNumber: every stage answers with
/// `test_body` tests or one-branch sets, and the judge answers `verdicts`
/// in order, repeating the last one.
std::unique_ptr<ScriptedBackend> pipeline_script(const std::vector<std::string>& verdicts,
                                                 const std::string& test_body = kCompilingBody);

/// Rates recomputed from the raw outcome matrix with explicit loops, as a
/// second route for checking aggregate().
struct ReferenceRates {
  double csr = 0, pr = 0, ddr = 0, bc = 0, sc = 0;
  std::size_t compiled = 0, passing = 0, detected = 0;
};
ReferenceRates reference_rates(const std::vector<SampleOutcome>& outcomes, std::size_t dataset_size);

/// Random per-sample outcome matrices covering every verdict combination.
std::vector<SampleOutcome> random_outcomes(std::mt19937& rng, std::size_t count);

}  // namespace intentest::testkit
