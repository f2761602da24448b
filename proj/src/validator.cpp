#include "intentest/validator.hpp"

#include "intentest/generator.hpp"
#include "intentest/java_source.hpp"

#include <stdexcept>

namespace intentest {

ValidatedSuite validate_suite(TestSuite suite, const BenchmarkSample& sample, const PipelineConfig& cfg,
                              LlmSession& session, ExecutionOracle& oracle, const Workspace& ws,
                              const PromptCatalog& catalog) {
  if (suite.empty()) throw std::invalid_argument("validate_suite: empty suite");
  const int round = suite.tests.front().refinement_round;
  const auto skeleton = java::class_context_skeleton(sample);

  ValidatedSuite result;
  for (;;) {
    auto report = oracle.compile(ws, suite);
    ++result.compile_calls;
    if (report.success) {
      result.status = CompileStatus::ok;
      break;
    }
    if (result.repair_attempts >= cfg.max_iter_val) {
      result.status = CompileStatus::failed;
      break;
    }
    auto rendered = java::render_test_class(suite, ws.package_name, ws.test_class);
    auto prompt = catalog.render(TemplateId::repair, {{"TEST_CLASS", rendered.text},
                                                      {"COMPILE_ERRORS", format_diagnostics(report.diagnostics)},
                                                      {"FOCAL_METHOD", sample.buggy_source},
                                                      {"CLASS_CONTEXT", skeleton}});
    auto reply = session.ask("repair", prompt);
    ++result.repair_attempts;

    RepairRecord record{result.repair_attempts, std::move(report.diagnostics), suite.size(), suite.size()};
    auto repaired = extract_tests(reply, static_cast<int>(suite.size()));
    if (!repaired.empty()) {
      suite = make_suite(std::move(repaired), TestOrigin::repaired, round);
      record.tests_after = suite.size();
    }
    result.history.push_back(std::move(record));
  }

  for (auto& t : suite.tests) {
    t.set_compile_status(result.status);
    t.set_repair_attempts(result.repair_attempts);
  }
  result.suite = std::move(suite);
  return result;
}

}  // namespace intentest
