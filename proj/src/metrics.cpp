#include "intentest/metrics.hpp"

#include "intentest/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace intentest {

bool suite_compiled(const SampleOutcome& o) { return o.compiled_fixed; }

bool suite_passes(const SampleOutcome& o) {
  if (!o.compiled_fixed || o.tests.empty()) return false;
  return std::all_of(o.tests.begin(), o.tests.end(),
                     [](const TestOutcome& t) { return t.fixed == RunVerdict::pass; });
}

bool defect_detected(const SampleOutcome& o) {
  if (!o.compiled_fixed || !o.compiled_buggy) return false;
  return std::any_of(o.tests.begin(), o.tests.end(), [](const TestOutcome& t) {
    return t.fixed == RunVerdict::pass && t.buggy == RunVerdict::fail;
  });
}

namespace {

bool compile_on(ExecutionOracle& oracle, const Workspace& ws, const TestSuite& suite, SampleOutcome& o) {
  try {
    auto report = oracle.compile(ws, suite);
    if (!report.success) {
      o.notes.push_back(std::string(to_string(ws.version)) + ": compilation failed");
    }
    return report.success;
  } catch (const Error& e) {
    o.notes.push_back(std::string(to_string(ws.version)) + ": " + e.what());
    return false;
  }
}

std::map<std::string, RunVerdict> run_on(ExecutionOracle& oracle, const Workspace& ws, const TestSuite& suite,
                                         SampleOutcome& o) {
  try {
    return oracle.run_tests(ws, suite).per_test;
  } catch (const Error& e) {
    o.notes.push_back(std::string(to_string(ws.version)) + ": " + e.what());
    return {};
  }
}

RunVerdict lookup(const std::map<std::string, RunVerdict>& verdicts, const std::string& id) {
  auto it = verdicts.find(id);
  return it == verdicts.end() ? RunVerdict::error : it->second;
}

}  // namespace

SampleOutcome evaluate_sample(const BenchmarkSample& sample, const TestSuite& suite, ExecutionOracle& oracle) {
  SampleOutcome o;
  o.sample_id = sample.id;
  o.n_tests = suite.size();
  for (const auto& t : suite.tests) o.tests.push_back({t.test_id, RunVerdict::unknown, RunVerdict::unknown});
  const bool validated = !suite.empty() && std::all_of(suite.tests.begin(), suite.tests.end(), [](const auto& t) {
    return t.compile_status == CompileStatus::ok;
  });
  if (!validated) return o;

  Workspace fixed_ws, buggy_ws;
  try {
    fixed_ws = oracle.prepare_workspace(sample, ProgramVersion::fixed);
    buggy_ws = oracle.prepare_workspace(sample, ProgramVersion::buggy);
  } catch (const Error& e) {
    o.notes.push_back(e.what());
    return o;
  }

  o.compiled_fixed = compile_on(oracle, fixed_ws, suite, o);
  if (o.compiled_fixed) {
    auto verdicts = run_on(oracle, fixed_ws, suite, o);
    for (auto& t : o.tests) t.fixed = lookup(verdicts, t.test_id);
    try {
      o.coverage = oracle.measure_coverage(fixed_ws, suite);
    } catch (const Error& e) {
      o.notes.push_back(std::string("coverage: ") + e.what());
    }
  }
  o.compiled_buggy = compile_on(oracle, buggy_ws, suite, o);
  if (o.compiled_buggy) {
    auto verdicts = run_on(oracle, buggy_ws, suite, o);
    for (auto& t : o.tests) t.buggy = lookup(verdicts, t.test_id);
  }
  return o;
}

MetricsReport aggregate(const std::vector<SampleOutcome>& outcomes, std::size_t dataset_size) {
  if (outcomes.size() > dataset_size) throw std::invalid_argument("aggregate: more outcomes than samples");
  MetricsReport r;
  r.n_samples = dataset_size;
  r.empty = dataset_size == 0;
  double bc_sum = 0, sc_sum = 0;
  for (const auto& o : outcomes) {
    r.compiled += suite_compiled(o) ? 1 : 0;
    r.passing += suite_passes(o) ? 1 : 0;
    r.detected += defect_detected(o) ? 1 : 0;
    if (o.coverage && o.coverage->branches_total > 0) {
      bc_sum += 100.0 * o.coverage->branches_covered / o.coverage->branches_total;
      ++r.bc_samples;
    }
    if (o.coverage && o.coverage->statements_total > 0) {
      sc_sum += 100.0 * o.coverage->statements_covered / o.coverage->statements_total;
      ++r.sc_samples;
    }
    r.samples.push_back({o, "", nlohmann::json::object(), ""});
  }
  if (dataset_size > 0) {
    const double n = static_cast<double>(dataset_size);
    r.csr = 100.0 * static_cast<double>(r.compiled) / n;
    r.pr = 100.0 * static_cast<double>(r.passing) / n;
    r.ddr = 100.0 * static_cast<double>(r.detected) / n;
  }
  if (r.bc_samples > 0) r.bc = bc_sum / static_cast<double>(r.bc_samples);
  if (r.sc_samples > 0) r.sc = sc_sum / static_cast<double>(r.sc_samples);
  std::sort(r.samples.begin(), r.samples.end(),
            [](const SampleRow& a, const SampleRow& b) { return a.outcome.sample_id < b.outcome.sample_id; });
  return r;
}

nlohmann::json to_json(const MetricsReport& r) {
  using nlohmann::json;
  json samples = json::array();
  for (const auto& row : r.samples) {
    const auto& o = row.outcome;
    json tests = json::array();
    for (const auto& t : o.tests) {
      tests.push_back({{"id", t.test_id}, {"fixed", to_string(t.fixed)}, {"buggy", to_string(t.buggy)}});
    }
    json coverage = nullptr;
    if (o.coverage) {
      coverage = {{"branches_covered", o.coverage->branches_covered},
                  {"branches_total", o.coverage->branches_total},
                  {"statements_covered", o.coverage->statements_covered},
                  {"statements_total", o.coverage->statements_total}};
    }
    samples.push_back({{"id", o.sample_id},
                       {"terminal_state", row.terminal_state},
                       {"n_tests", o.n_tests},
                       {"compiled_fixed", o.compiled_fixed},
                       {"compiled_buggy", o.compiled_buggy},
                       {"compiled", suite_compiled(o)},
                       {"passing", suite_passes(o)},
                       {"detected", defect_detected(o)},
                       {"tests", tests},
                       {"coverage", coverage},
                       {"counters", row.counters},
                       {"notes", o.notes},
                       {"error", row.error}});
  }
  json states = json::object();
  for (const auto& [state, count] : r.terminal_states) states[state] = count;
  return {
      {"interpretation",
       {{"csr", "share of samples whose final suite compiles against the fixed version"},
        {"pr", "share of samples whose compiled, non-empty final suite passes every test on the fixed version"},
        {"ddr", "share of samples with a test that compiles on both versions, passes on fixed and fails "
                "by assertion on buggy"},
        {"coverage", "mean focal-method branch/statement coverage over samples with coverage data"}}},
      {"config", r.config},
      {"n_samples", r.n_samples},
      {"empty", r.empty},
      {"interrupted", r.interrupted},
      {"metrics", {{"csr", r.csr}, {"pr", r.pr}, {"ddr", r.ddr}, {"bc", r.bc}, {"sc", r.sc}}},
      {"counts",
       {{"compiled", r.compiled},
        {"passing", r.passing},
        {"detected", r.detected},
        {"bc_samples", r.bc_samples},
        {"sc_samples", r.sc_samples}}},
      {"terminal_states", states},
      {"samples", samples},
  };
}

namespace {

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", v);
  return buf;
}

}  // namespace

std::string render_markdown_table(const std::vector<std::pair<std::string, nlohmann::json>>& rows) {
  std::ostringstream out;
  out << "| Run | Samples | CSR | PR | DDR | BC | SC |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const auto& [label, j] : rows) {
    const auto& m = j.at("metrics");
    out << "| " << label << " | " << j.at("n_samples").get<std::size_t>() << " | "
        << pct(m.at("csr").get<double>()) << " | " << pct(m.at("pr").get<double>()) << " | "
        << pct(m.at("ddr").get<double>()) << " | " << pct(m.at("bc").get<double>()) << " | "
        << pct(m.at("sc").get<double>()) << " |\n";
  }
  return out.str();
}

std::string render_markdown(const MetricsReport& report) {
  auto j = to_json(report);
  std::ostringstream out;
  out << "# Test generation report\n\n";
  out << render_markdown_table({{"this run", j}}) << "\n";
  if (report.empty) out << "The dataset is empty; every rate is reported as 0.\n\n";
  if (report.interrupted) out << "The run was interrupted; unfinished samples are marked aborted.\n\n";
  out << "## Terminal states\n\n";
  for (const auto& [state, count] : report.terminal_states) out << "- " << state << ": " << count << "\n";
  out << "\n## Samples\n\n";
  out << "| Sample | State | Tests | Compiled | Passing | Detected | Branch cov. | Statement cov. |\n";
  out << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& row : report.samples) {
    const auto& o = row.outcome;
    auto ratio = [](int a, int b) { return b > 0 ? std::to_string(a) + "/" + std::to_string(b) : std::string("-"); };
    out << "| " << o.sample_id << " | " << row.terminal_state << " | " << o.n_tests << " | "
        << (suite_compiled(o) ? "yes" : "no") << " | " << (suite_passes(o) ? "yes" : "no") << " | "
        << (defect_detected(o) ? "yes" : "no") << " | "
        << (o.coverage ? ratio(o.coverage->branches_covered, o.coverage->branches_total) : "-") << " | "
        << (o.coverage ? ratio(o.coverage->statements_covered, o.coverage->statements_total) : "-") << " |\n";
  }
  out << "\nCSR counts samples whose final suite compiles on the fixed version; PR additionally requires "
         "every test to pass there; a defect is detected when some test passes on fixed and fails by "
         "assertion on buggy.\n";
  return out.str();
}

void write_report(const MetricsReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "report.json", std::ios::binary | std::ios::trunc);
    out << to_json(report).dump(2) << "\n";
  }
  std::ofstream md(dir / "report.md", std::ios::binary | std::ios::trunc);
  md << render_markdown(report);
}

}  // namespace intentest
