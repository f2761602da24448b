#include "intentest/generator.hpp"

#include "intentest/errors.hpp"
#include "intentest/java_source.hpp"

#include <map>
#include <set>

namespace intentest {

std::vector<GeneratedTest> extract_tests(std::string_view reply, int n) {
  std::vector<GeneratedTest> out;
  if (n <= 0) return out;
  auto blocks = java::fenced_blocks(reply);
  if (blocks.empty()) blocks.emplace_back(reply);

  std::set<std::string> used;
  for (const auto& block : blocks) {
    auto parts = java::split_unit(block);
    std::vector<std::string> shared;
    for (const auto& m : parts.members) {
      if (!m.is_test) shared.push_back(m.text);
    }
    for (const auto& m : parts.members) {
      if (!m.is_test) continue;
      std::string base = m.name.empty() ? "generatedTest" : m.name;
      std::string name = base;
      for (int k = 2; used.count(name); ++k) name = base + "_" + std::to_string(k);
      used.insert(name);

      GeneratedTest t;
      t.method_name = name;
      t.test_id = name;
      t.source = name == m.name ? m.text : java::rename_method(m.text, name);
      t.imports = parts.imports;
      t.members = shared;
      out.push_back(std::move(t));
      if (static_cast<int>(out.size()) == n) return out;
    }
  }
  return out;
}

TestSuite make_suite(std::vector<GeneratedTest> tests, TestOrigin origin, int refinement_round) {
  TestSuite suite;
  for (auto& t : tests) {
    t.origin = origin;
    t.refinement_round = refinement_round;
    suite.tests.push_back(std::move(t));
  }
  return suite;
}

std::string concatenated_sources(const TestSuite& suite) {
  std::string out;
  for (const auto& t : suite.tests) {
    if (!out.empty()) out += "\n\n";
    out += t.source;
  }
  return out;
}

std::string generation_prompt(const BenchmarkSample& sample, const PromptCatalog& catalog) {
  return catalog.render(TemplateId::generation, {{"FOCAL_METHOD", sample.buggy_source},
                                                 {"SUMMARY", sample.nld},
                                                 {"CLASS_CONTEXT", java::class_context_skeleton(sample)}});
}

TestSuite generate_candidates(const BenchmarkSample& sample, const PipelineConfig& cfg,
                              LlmSession& session, const PromptCatalog& catalog) {
  auto prompt = generation_prompt(sample, catalog);
  for (int attempt = 0; attempt < 2; ++attempt) {
    auto tests = extract_tests(session.ask("generation", prompt), cfg.n_tests);
    if (!tests.empty()) return make_suite(std::move(tests), TestOrigin::initial, 0);
  }
  throw NoTestsExtracted();
}

}  // namespace intentest
