#include "intentest/pipeline.hpp"

#include "intentest/analyzer.hpp"
#include "intentest/errors.hpp"
#include "intentest/generator.hpp"
#include "intentest/validator.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace intentest {

std::string_view to_string(TerminalState s) {
  switch (s) {
    case TerminalState::consistent: return "consistent";
    case TerminalState::iteration_cap: return "iteration_cap";
    case TerminalState::generation_failed: return "generation_failed";
    case TerminalState::analysis_failed: return "analysis_failed";
    case TerminalState::aborted: return "aborted";
  }
  return "?";
}

int backend_call_budget(const PipelineConfig& cfg) {
  const int v = cfg.max_iter_val;
  const int a = cfg.max_iter_ana;
  return 2 + v + 4 + a * (2 + 1 + 2 + 2 + v);
}

namespace {

class EventLog {
 public:
  EventLog(const LlmSession& session, std::vector<nlohmann::json>& sink) : session_(session), sink_(sink) {}

  void emit(std::string stage, int round, nlohmann::json fields = nlohmann::json::object()) {
    fields["stage"] = std::move(stage);
    fields["round"] = round;
    auto keys = nlohmann::json::array();
    for (; seen_ < session_.calls().size(); ++seen_) {
      const auto& c = session_.calls()[seen_];
      keys.push_back({{"tag", c.tag}, {"key", c.key}});
    }
    fields["calls"] = std::move(keys);
    sink_.push_back(std::move(fields));
  }

 private:
  const LlmSession& session_;
  std::vector<nlohmann::json>& sink_;
  std::size_t seen_ = 0;
};

nlohmann::json suite_json(const TestSuite& suite) {
  auto tests = nlohmann::json::array();
  for (const auto& t : suite.tests) {
    tests.push_back({{"id", t.test_id}, {"origin", to_string(t.origin)}, {"source", t.source}});
  }
  return tests;
}

void write_events(const std::filesystem::path& dir, const std::vector<nlohmann::json>& events) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "events.jsonl", std::ios::binary | std::ios::trunc);
  for (const auto& e : events) out << e.dump() << "\n";
}

}  // namespace

SampleResult run_sample(const BenchmarkSample& sample, const PipelineConfig& cfg, Backend& backend,
                        ExecutionOracle& oracle, const PromptCatalog& catalog) {
  SampleResult result;
  result.sample_id = sample.id;
  LlmSession session(backend, cfg.temperature);
  EventLog log(session, result.events);
  bool evaluate = false;

  try {
    TestSuite candidates;
    try {
      candidates = generate_candidates(sample, cfg, session, catalog);
    } catch (const NoTestsExtracted&) {
      log.emit("generation", 0, {{"tests", nlohmann::json::array()}});
      throw;
    }
    log.emit("generation", 0, {{"tests", suite_json(candidates)}});

    const auto ws = oracle.prepare_workspace(sample, ProgramVersion::buggy);
    auto validated = validate_suite(std::move(candidates), sample, cfg, session, oracle, ws, catalog);
    result.counters.repair_attempts_total += validated.repair_attempts;
    log.emit("validation", 0,
             {{"status", to_string(validated.status)},
              {"repair_attempts", validated.repair_attempts},
              {"tests", suite_json(validated.suite)}});
    result.suite_history.push_back(validated.suite);
    result.final_suite = validated.suite;
    evaluate = true;

    if (validated.status != CompileStatus::ok) {
      result.terminal_state = TerminalState::iteration_cap;
    } else {
      TestSuite current = validated.suite;
      try {
        auto correct = derive_correct_branches(sample, session, catalog);
        log.emit("correct_branches", 0,
                 {{"code_derived", correct.code_derived.texts()}, {"correct", correct.correct.texts()}});

        result.terminal_state = TerminalState::iteration_cap;
        for (int round = 1; round <= cfg.max_iter_ana; ++round) {
          result.counters.analyzer_rounds = round;
          auto test_branches = derive_test_branches(sample, current, session, catalog);
          log.emit("test_branches", round, {{"branches", test_branches.texts()}});

          auto verdict = judge_consistency(correct.correct, test_branches, session, catalog);
          result.last_verdict = verdict.verdict;
          log.emit("judge", round, {{"verdict", to_string(verdict.verdict)}, {"reply", verdict.raw_reply}});
          if (verdict.verdict == Verdict::consistent) {
            result.terminal_state = TerminalState::consistent;
            break;
          }

          auto finalized = finalize_branches(correct.correct, test_branches, session, catalog);
          log.emit("finalize", round, {{"branches", finalized.texts()}});

          auto prompt = catalog.render(TemplateId::refinement, {{"FOCAL_METHOD", sample.buggy_source},
                                                                {"SUMMARY", sample.nld},
                                                                {"FINALIZED_BRANCH", serialize_branch_set(finalized)},
                                                                {"CANDIDATE_TESTS", concatenated_sources(current)}});
          std::vector<GeneratedTest> refined;
          for (int attempt = 0; attempt < 2 && refined.empty(); ++attempt) {
            refined = extract_tests(session.ask("refinement", prompt), cfg.n_tests);
          }
          result.counters.refinement_rounds = round;
          if (refined.empty()) {
            log.emit("refinement", round, {{"tests", nlohmann::json::array()}});
            continue;
          }
          log.emit("refinement", round, {{"tests", suite_json(make_suite(refined, TestOrigin::refined, round))}});

          auto revalidated = validate_suite(make_suite(std::move(refined), TestOrigin::refined, round), sample,
                                            cfg, session, oracle, ws, catalog);
          result.counters.repair_attempts_total += revalidated.repair_attempts;
          log.emit("validation", round,
                   {{"status", to_string(revalidated.status)},
                    {"repair_attempts", revalidated.repair_attempts},
                    {"tests", suite_json(revalidated.suite)}});
          result.suite_history.push_back(revalidated.suite);
          if (revalidated.status == CompileStatus::ok) current = std::move(revalidated.suite);
        }
      } catch (const EmptyBranchSet&) {
        result.terminal_state = TerminalState::analysis_failed;
      }
      result.final_suite = std::move(current);
    }
  } catch (const NoTestsExtracted& e) {
    result.terminal_state = TerminalState::generation_failed;
    result.error = e.what();
  } catch (const Error& e) {
    result.terminal_state = TerminalState::aborted;
    result.error = e.what();
    evaluate = false;
  }

  result.counters.backend_calls = static_cast<int>(session.call_count());
  if (result.counters.backend_calls > backend_call_budget(cfg)) {
    throw std::logic_error("backend call budget exceeded for sample " + sample.id);
  }

  result.outcome.sample_id = sample.id;
  if (evaluate) {
    result.outcome = evaluate_sample(sample, result.final_suite, oracle);
    log.emit("evaluation", 0,
             {{"compiled", suite_compiled(result.outcome)},
              {"passing", suite_passes(result.outcome)},
              {"detected", defect_detected(result.outcome)}});
  }
  log.emit("terminal", 0, {{"state", to_string(result.terminal_state)}, {"error", result.error}});

  if (!cfg.workdir.empty()) write_events(cfg.workdir / sample.id, result.events);
  return result;
}

nlohmann::json config_echo(const PipelineConfig& cfg) {
  return {{"max_iter_val", cfg.max_iter_val},
          {"max_iter_ana", cfg.max_iter_ana},
          {"n_tests", cfg.n_tests},
          {"temperature", cfg.temperature},
          {"oracle", cfg.oracle_id}};
}

BenchmarkRun run_benchmark(const std::vector<BenchmarkSample>& samples, const PipelineConfig& cfg, Backend& backend,
                           ExecutionOracle& oracle, const PromptCatalog& catalog, const std::atomic<bool>* stop) {
  cfg.validate();
  std::vector<const BenchmarkSample*> order;
  for (const auto& s : samples) order.push_back(&s);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) { return a->id < b->id; });

  std::vector<SampleResult> results(order.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> interrupted{false};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= order.size()) return;
      const auto& sample = *order[i];
      if (stop && stop->load()) {
        interrupted = true;
        results[i].sample_id = sample.id;
        results[i].outcome.sample_id = sample.id;
        results[i].error = "interrupted before start";
        continue;
      }
      try {
        results[i] = run_sample(sample, cfg, backend, oracle, catalog);
      } catch (const std::exception& e) {
        results[i] = SampleResult{};
        results[i].sample_id = sample.id;
        results[i].outcome.sample_id = sample.id;
        results[i].error = e.what();
      }
    }
  };

  const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.worker_count), order.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<SampleOutcome> outcomes;
  for (const auto& r : results) outcomes.push_back(r.outcome);
  BenchmarkRun run;
  run.report = aggregate(outcomes, samples.size());
  run.report.config = config_echo(cfg);
  run.report.interrupted = interrupted;
  for (std::size_t i = 0; i < results.size(); ++i) {
    auto& row = run.report.samples[i];
    const auto& r = results[i];
    row.terminal_state = std::string(to_string(r.terminal_state));
    row.error = r.error;
    row.counters = {{"repair_attempts_total", r.counters.repair_attempts_total},
                    {"refinement_rounds", r.counters.refinement_rounds},
                    {"analyzer_rounds", r.counters.analyzer_rounds},
                    {"backend_calls", r.counters.backend_calls}};
    ++run.report.terminal_states[row.terminal_state];
  }
  run.results = std::move(results);
  return run;
}

}  // namespace intentest
