#include "intentest/java_oracle.hpp"

#include "intentest/errors.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <fstream>
#include <regex>
#include <sstream>

namespace intentest {

namespace pt = boost::property_tree;

namespace {

pt::ptree read_xml_string(std::string_view xml) {
  std::istringstream in{std::string(xml)};
  pt::ptree tree;
  pt::read_xml(in, tree, pt::xml_parser::no_comments);
  return tree;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "testZero()" / "testZero(String)[2]" -> "testZero"
std::string junit_method_name(const std::string& display) {
  auto paren = display.find('(');
  return paren == std::string::npos ? display : display.substr(0, paren);
}

int verdict_rank(RunVerdict v) {
  switch (v) {
    case RunVerdict::pass: return 0;
    case RunVerdict::fail: return 1;
    case RunVerdict::error: return 2;
    case RunVerdict::unknown: return -1;
  }
  return -1;
}

void collect_junit_cases(std::string_view xml, std::map<std::string, RunVerdict>& verdicts,
                         std::map<std::string, std::string>& messages) {
  pt::ptree tree;
  try {
    tree = read_xml_string(xml);
  } catch (const pt::xml_parser_error&) {
    return;
  }
  auto visit_suite = [&](const pt::ptree& suite) {
    for (const auto& [tag, node] : suite) {
      if (tag != "testcase") continue;
      auto name = junit_method_name(node.get<std::string>("<xmlattr>.name", ""));
      RunVerdict v = RunVerdict::pass;
      std::string message;
      if (auto f = node.get_child_optional("failure")) {
        v = RunVerdict::fail;
        message = f->get<std::string>("<xmlattr>.message", "");
      } else if (auto e = node.get_child_optional("error")) {
        v = RunVerdict::error;
        message = e->get<std::string>("<xmlattr>.type", "") + ": " + e->get<std::string>("<xmlattr>.message", "");
      } else if (node.get_child_optional("skipped")) {
        v = RunVerdict::error;
        message = "skipped";
      }
      // Parameterized invocations share a name; the worst verdict wins.
      auto it = verdicts.find(name);
      if (it == verdicts.end() || verdict_rank(v) > verdict_rank(it->second)) {
        verdicts[name] = v;
        if (!message.empty()) messages[name] = message;
      }
    }
  };
  for (const auto& [tag, node] : tree) {
    if (tag == "testsuite") visit_suite(node);
    if (tag == "testsuites") {
      for (const auto& [inner_tag, inner] : node) {
        if (inner_tag == "testsuite") visit_suite(inner);
      }
    }
  }
}

}  // namespace

std::vector<Diagnostic> parse_javac_diagnostics(std::string_view output) {
  static const std::regex re(R"(^(.*\.java):(\d+): error: (.*)$)");
  std::vector<Diagnostic> out;
  std::istringstream in{std::string(output)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (std::regex_match(line, m, re)) {
      out.push_back({std::filesystem::path(m[1].str()).filename().string(), std::stoi(m[2].str()), m[3].str()});
    }
  }
  return out;
}

ExecutionReport parse_junit_xml(std::string_view xml, const std::vector<std::string>& test_ids) {
  std::map<std::string, RunVerdict> verdicts;
  std::map<std::string, std::string> messages;
  collect_junit_cases(xml, verdicts, messages);
  ExecutionReport report;
  for (const auto& id : test_ids) {
    auto it = verdicts.find(id);
    if (it == verdicts.end()) {
      report.per_test[id] = RunVerdict::error;
      report.messages[id] = "test did not report a result";
    } else {
      report.per_test[id] = it->second;
      if (messages.count(id)) report.messages[id] = messages[id];
    }
  }
  return report;
}

CoverageReport parse_jacoco_xml(std::string_view xml, std::string_view package_path,
                                std::string_view source_file, LineSpan span) {
  pt::ptree tree;
  try {
    tree = read_xml_string(xml);
  } catch (const pt::xml_parser_error& e) {
    throw CoverageUnavailable(std::string("unparseable coverage report: ") + e.what());
  }
  auto report_node = tree.get_child_optional("report");
  if (!report_node) throw CoverageUnavailable("coverage report has no <report> root");
  for (const auto& [tag, pkg] : *report_node) {
    if (tag != "package" || pkg.get<std::string>("<xmlattr>.name", "") != package_path) continue;
    for (const auto& [ftag, file] : pkg) {
      if (ftag != "sourcefile" || file.get<std::string>("<xmlattr>.name", "") != source_file) continue;
      CoverageReport cov;
      for (const auto& [ltag, line] : file) {
        if (ltag != "line") continue;
        int nr = line.get<int>("<xmlattr>.nr", 0);
        if (!span.contains(nr)) continue;
        int mi = line.get<int>("<xmlattr>.mi", 0);
        int ci = line.get<int>("<xmlattr>.ci", 0);
        int mb = line.get<int>("<xmlattr>.mb", 0);
        int cb = line.get<int>("<xmlattr>.cb", 0);
        if (mi + ci > 0) {
          ++cov.statements_total;
          if (ci > 0) ++cov.statements_covered;
        }
        cov.branches_total += mb + cb;
        cov.branches_covered += cb;
      }
      return cov;
    }
  }
  throw CoverageUnavailable("coverage report has no entry for " + std::string(package_path) + "/" +
                            std::string(source_file));
}

JavaOracle::JavaOracle(std::filesystem::path workdir, JavaToolchainConfig config)
    : ExecutionOracle(std::move(workdir)), config_(std::move(config)), limiter_(std::max(1, config_.max_processes)) {}

std::vector<DoctorCheck> JavaOracle::doctor(const JavaToolchainConfig& config) {
  std::vector<DoctorCheck> checks;
  auto exe = [&](const std::string& name, const std::string& tool) {
    auto found = find_executable(tool);
    checks.push_back({name, found.has_value(), found ? found->string() : "'" + tool + "' not found on PATH"});
  };
  auto jar = [&](const std::string& name, const std::filesystem::path& p) {
    bool ok = !p.empty() && std::filesystem::is_regular_file(p);
    checks.push_back({name, ok, p.empty() ? "not configured" : (ok ? p.string() : p.string() + " does not exist")});
  };
  exe("javac", config.javac);
  exe("java", config.java);
  jar("junit console launcher", config.junit_console_jar);
  jar("jacoco agent", config.jacoco_agent_jar);
  jar("jacoco cli", config.jacoco_cli_jar);
  return checks;
}

bool JavaOracle::toolchain_ready(const JavaToolchainConfig& config) {
  for (const auto& c : doctor(config)) {
    if (!c.ok) return false;
  }
  return true;
}

std::string JavaOracle::classpath_string(const Workspace& ws) const {
  std::string cp = (ws.root / "classes").string();
  for (const auto& entry : config_.classpath) cp += ":" + entry.string();
  return cp;
}

std::vector<std::string> JavaOracle::javac_command(const Workspace& ws, const std::filesystem::path& test_file) const {
  std::string cp = classpath_string(ws);
  if (!config_.junit_console_jar.empty()) cp += ":" + config_.junit_console_jar.string();
  return {config_.javac, "-g", "-encoding", "UTF-8", "-nowarn", "-d", (ws.root / "classes").string(),
          "-cp", cp, ws.focal_file.string(), test_file.string()};
}

std::vector<std::string> JavaOracle::junit_command(const Workspace& ws, const std::filesystem::path& reports_dir,
                                                   const std::filesystem::path* jacoco_exec) const {
  std::vector<std::string> cmd = {config_.java};
  if (jacoco_exec) {
    cmd.push_back("-javaagent:" + config_.jacoco_agent_jar.string() + "=destfile=" + jacoco_exec->string());
  }
  std::string qualified = ws.package_name.empty() ? ws.test_class : ws.package_name + "." + ws.test_class;
  cmd.insert(cmd.end(), {"-jar", config_.junit_console_jar.string(), "execute", "--disable-banner",
                         "--details=none", "--class-path", classpath_string(ws), "--select-class", qualified,
                         "--reports-dir", reports_dir.string(),
                         "--config=junit.jupiter.execution.timeout.default=" +
                             std::to_string(config_.test_timeout.count()) + "s"});
  return cmd;
}

ProcessResult JavaOracle::run_limited(const std::vector<std::string>& argv, const std::filesystem::path& cwd,
                                      std::chrono::milliseconds timeout) {
  ProcessLimiter::Slot slot(limiter_);
  return run_process(argv, cwd, timeout);
}

std::chrono::milliseconds JavaOracle::suite_timeout(const TestSuite& suite) const {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
      config_.test_timeout * static_cast<long>(suite.size() + 1) + std::chrono::seconds(60));
}

CompileReport JavaOracle::compile(const Workspace& ws, const TestSuite& suite) {
  if (!find_executable(config_.javac)) throw ToolchainMissing("javac not found: " + config_.javac);
  auto test_file = write_test_class(ws, suite);
  std::filesystem::remove_all(ws.root / "classes");
  std::filesystem::create_directories(ws.root / "classes");
  auto result = run_limited(javac_command(ws, test_file), ws.root,
                            std::chrono::duration_cast<std::chrono::milliseconds>(config_.compile_timeout));
  CompileReport report;
  report.diagnostics = parse_javac_diagnostics(result.err + "\n" + result.out);
  report.success = result.exit_code == 0 && !result.timed_out;
  if (!report.success && report.diagnostics.empty()) {
    report.diagnostics.push_back({test_file.filename().string(), 0,
                                  result.timed_out ? "javac timed out" : "javac failed: " + result.err});
  }
  return report;
}

ExecutionReport JavaOracle::run_tests(const Workspace& ws, const TestSuite& suite) {
  auto reports = ws.root / "reports";
  std::filesystem::remove_all(reports);
  std::filesystem::create_directories(reports);
  auto result = run_limited(junit_command(ws, reports, nullptr), ws.root, suite_timeout(suite));
  std::map<std::string, RunVerdict> verdicts;
  std::map<std::string, std::string> messages;
  for (const auto& entry : std::filesystem::directory_iterator(reports)) {
    auto name = entry.path().filename().string();
    if (name.rfind("TEST-", 0) == 0 && entry.path().extension() == ".xml") {
      collect_junit_cases(slurp(entry.path()), verdicts, messages);
    }
  }
  ExecutionReport report;
  for (const auto& id : suite.test_ids()) {
    auto it = verdicts.find(id);
    report.per_test[id] = it == verdicts.end() ? RunVerdict::error : it->second;
    if (it == verdicts.end()) {
      report.messages[id] = result.timed_out ? "test run timed out" : "test did not report a result";
    } else if (messages.count(id)) {
      report.messages[id] = messages[id];
    }
  }
  return report;
}

CoverageReport JavaOracle::measure_coverage(const Workspace& ws, const TestSuite& suite) {
  auto reports = ws.root / "coverage-reports";
  auto exec = ws.root / "jacoco.exec";
  auto xml = ws.root / "jacoco.xml";
  std::filesystem::remove_all(reports);
  std::filesystem::create_directories(reports);
  std::filesystem::remove(exec);
  std::filesystem::remove(xml);
  run_limited(junit_command(ws, reports, &exec), ws.root, suite_timeout(suite));
  if (!std::filesystem::exists(exec)) throw CoverageUnavailable("JaCoCo produced no execution data");
  auto result = run_limited({config_.java, "-jar", config_.jacoco_cli_jar.string(), "report", exec.string(),
                             "--classfiles", (ws.root / "classes").string(), "--sourcefiles",
                             (ws.root / "src").string(), "--xml", xml.string()},
                            ws.root, std::chrono::minutes(2));
  if (result.exit_code != 0 || !std::filesystem::exists(xml)) {
    throw CoverageUnavailable("JaCoCo report generation failed: " + result.err);
  }
  return parse_jacoco_xml(slurp(xml), package_dir(ws.package_name).generic_string(),
                          ws.focal_file.filename().string(), ws.focal_span);
}

}  // namespace intentest
