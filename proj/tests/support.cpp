#include "support.hpp"

#include "intentest/bench.hpp"

#include <fstream>
#include <sstream>

namespace intentest::testkit {
namespace fs = std::filesystem;

fs::path source_dir() { return INTENTEST_SOURCE_DIR; }

fs::path fixture(const std::string& relative) { return source_dir() / "fixtures" / relative; }

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("intentest-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary | std::ios::trunc) << text;
}

BenchmarkSample is_simple_number() {
  return load_dataset(fixture("datasets/isSimpleNumber")).samples.at(0);
}

std::string java_reply(const std::vector<std::pair<std::string, std::string>>& tests) {
  std::string out =
      "```java\nimport org.junit.jupiter.api.Test;\nimport static org.junit.jupiter.api.Assertions.*;\n\n"
      "public class GeneratedTest {\n";
  for (const auto& [name, body] : tests) {
    out += "    @Test\n    public void " + name + "() {\n        " + body + "\n    }\n\n";
  }
  out += "}\n```\n";
  return out;
}

std::string branch_reply(const std::vector<std::string>& texts) {
  std::string out;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    out += "Branch " + std::to_string(i + 1) + ": " + texts[i] + "\n";
  }
  return out;
}

std::unique_ptr<ScriptedBackend> pipeline_script(const std::vector<std::string>& verdicts,
                                                 const std::string& test_body) {
  auto b = std::make_unique<ScriptedBackend>();
  auto repeat = [&](const std::string& tag, const std::string& reply) {
    b->add_rule({tag, "", {reply}, true, std::nullopt});
  };
  const auto tests = java_reply({{"first", test_body}, {"second", test_body}});
  repeat("generation", tests);
  repeat("repair", tests);
  repeat("refinement", tests);
  repeat("code_analysis", branch_reply({"s is null or empty: return false"}));
  repeat("nld_analysis", branch_reply({"s is null or empty: return false", "s is \"0\": return true"}));
  repeat("test_analysis", branch_reply({"s is null or empty: return false"}));
  repeat("consistency_correction", branch_reply({"s is \"0\": return true"}));
  ScriptedBackend::Rule judge{"consistency_check", "", {verdicts.begin(), verdicts.end()}, true, std::nullopt};
  b->add_rule(std::move(judge));
  return b;
}

ReferenceRates reference_rates(const std::vector<SampleOutcome>& outcomes, std::size_t dataset_size) {
  ReferenceRates r;
  double bc_sum = 0, sc_sum = 0;
  int bc_n = 0, sc_n = 0;
  for (const auto& o : outcomes) {
    if (o.compiled_fixed) ++r.compiled;
    int pass_fixed = 0;
    bool kills = false;
    for (const auto& t : o.tests) {
      if (t.fixed == RunVerdict::pass) ++pass_fixed;
      if (t.fixed == RunVerdict::pass && t.buggy == RunVerdict::fail) kills = true;
    }
    if (o.compiled_fixed && !o.tests.empty() && pass_fixed == static_cast<int>(o.tests.size())) ++r.passing;
    if (o.compiled_fixed && o.compiled_buggy && kills) ++r.detected;
    if (o.coverage) {
      if (o.coverage->branches_total > 0) {
        bc_sum += 100.0 * o.coverage->branches_covered / o.coverage->branches_total;
        ++bc_n;
      }
      if (o.coverage->statements_total > 0) {
        sc_sum += 100.0 * o.coverage->statements_covered / o.coverage->statements_total;
        ++sc_n;
      }
    }
  }
  if (dataset_size > 0) {
    r.csr = 100.0 * static_cast<double>(r.compiled) / static_cast<double>(dataset_size);
    r.pr = 100.0 * static_cast<double>(r.passing) / static_cast<double>(dataset_size);
    r.ddr = 100.0 * static_cast<double>(r.detected) / static_cast<double>(dataset_size);
  }
  if (bc_n > 0) r.bc = bc_sum / bc_n;
  if (sc_n > 0) r.sc = sc_sum / sc_n;
  return r;
}

std::vector<SampleOutcome> random_outcomes(std::mt19937& rng, std::size_t count) {
  const RunVerdict verdicts[] = {RunVerdict::pass, RunVerdict::fail, RunVerdict::error, RunVerdict::unknown};
  std::uniform_int_distribution<int> coin(0, 1), verdict(0, 3), n_tests(0, 6), total(0, 12);
  std::vector<SampleOutcome> out;
  for (std::size_t i = 0; i < count; ++i) {
    SampleOutcome o;
    o.sample_id = "s" + std::to_string(i);
    o.compiled_fixed = coin(rng);
    o.compiled_buggy = coin(rng);
    o.n_tests = static_cast<std::size_t>(n_tests(rng));
    for (std::size_t t = 0; t < o.n_tests; ++t) {
      o.tests.push_back({"t" + std::to_string(t), verdicts[verdict(rng)], verdicts[verdict(rng)]});
    }
    if (coin(rng)) {
      CoverageReport c;
      c.branches_total = total(rng);
      c.statements_total = total(rng);
      c.branches_covered = std::uniform_int_distribution<int>(0, c.branches_total)(rng);
      c.statements_covered = std::uniform_int_distribution<int>(0, c.statements_total)(rng);
      o.coverage = c;
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace intentest::testkit
