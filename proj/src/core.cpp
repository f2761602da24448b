#include "intentest/core.hpp"

#include "intentest/errors.hpp"

#include <cctype>
#include <regex>
#include <stdexcept>

namespace intentest {

std::string_view to_string(ProgramVersion v) {
  return v == ProgramVersion::buggy ? "buggy" : "fixed";
}

std::string_view to_string(TestOrigin o) {
  switch (o) {
    case TestOrigin::initial: return "initial";
    case TestOrigin::repaired: return "repaired";
    case TestOrigin::refined: return "refined";
  }
  return "?";
}

std::string_view to_string(CompileStatus s) {
  switch (s) {
    case CompileStatus::unknown: return "unknown";
    case CompileStatus::ok: return "ok";
    case CompileStatus::failed: return "failed";
  }
  return "?";
}

std::string_view to_string(RunVerdict v) {
  switch (v) {
    case RunVerdict::unknown: return "unknown";
    case RunVerdict::pass: return "pass";
    case RunVerdict::fail: return "fail";
    case RunVerdict::error: return "error";
  }
  return "?";
}

std::string_view to_string(BranchSetKind k) {
  switch (k) {
    case BranchSetKind::code_derived: return "code_derived";
    case BranchSetKind::correct: return "correct";
    case BranchSetKind::test_case: return "test_case";
    case BranchSetKind::finalized: return "finalized";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  return v == Verdict::consistent ? "consistent" : "inconsistent";
}

RunVerdict run_verdict_from_string(std::string_view s) {
  if (s == "pass") return RunVerdict::pass;
  if (s == "fail") return RunVerdict::fail;
  if (s == "error") return RunVerdict::error;
  if (s == "unknown") return RunVerdict::unknown;
  throw std::invalid_argument("unknown run verdict '" + std::string(s) + "'");
}

std::string declared_class_name(std::string_view class_declaration) {
  static const std::regex re(R"((?:^|\s)(?:class|interface|enum|record)\s+([A-Za-z_$][\w$]*))");
  std::string decl(class_declaration);
  std::smatch m;
  if (std::regex_search(decl, m, re)) return m[1].str();
  return {};
}

std::string BenchmarkSample::method_name() const {
  auto paren = focal_signature.find('(');
  std::string_view head(focal_signature.data(), paren == std::string::npos ? focal_signature.size() : paren);
  while (!head.empty() && std::isspace(static_cast<unsigned char>(head.back()))) head.remove_suffix(1);
  auto start = head.size();
  while (start > 0) {
    char c = head[start - 1];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      --start;
    } else {
      break;
    }
  }
  return std::string(head.substr(start));
}

void GeneratedTest::set_compile_status(CompileStatus next) {
  if (compile_status == CompileStatus::ok && next == CompileStatus::unknown) {
    throw std::logic_error("compile_status cannot move from ok back to unknown");
  }
  compile_status = next;
  if (next != CompileStatus::ok) {
    run_fixed = RunVerdict::unknown;
    run_buggy = RunVerdict::unknown;
  }
}

void GeneratedTest::set_repair_attempts(int attempts) {
  if (attempts < repair_attempts) {
    throw std::logic_error("repair_attempts cannot decrease");
  }
  repair_attempts = attempts;
}

bool GeneratedTest::lifecycle_consistent() const {
  if (compile_status != CompileStatus::ok) {
    return run_fixed == RunVerdict::unknown && run_buggy == RunVerdict::unknown;
  }
  return repair_attempts >= 0 && refinement_round >= 0;
}

std::vector<std::string> TestSuite::test_ids() const {
  std::vector<std::string> ids;
  ids.reserve(tests.size());
  for (const auto& t : tests) ids.push_back(t.test_id);
  return ids;
}

BranchSet BranchSet::from_texts(BranchSetKind kind, const std::vector<std::string>& texts) {
  BranchSet bs{kind, {}};
  int index = 1;
  for (const auto& t : texts) bs.branches.push_back({index++, t});
  return bs;
}

std::vector<std::string> BranchSet::texts() const {
  std::vector<std::string> out;
  out.reserve(branches.size());
  for (const auto& b : branches) out.push_back(b.text);
  return out;
}

bool BranchSet::valid() const {
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const auto& b = branches[i];
    if (b.index != static_cast<int>(i) + 1) return false;
    if (b.text.empty() || b.text.find_first_of("\r\n") != std::string::npos) return false;
    if (std::isspace(static_cast<unsigned char>(b.text.front())) ||
        std::isspace(static_cast<unsigned char>(b.text.back()))) {
      return false;
    }
  }
  return true;
}

std::string serialize_branch_set(const BranchSet& bs) {
  std::string out;
  for (const auto& b : bs.branches) {
    if (!out.empty()) out += '\n';
    out += "Branch " + std::to_string(b.index) + ": " + b.text;
  }
  return out;
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

void skip_spaces(std::string_view& s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
}

std::string_view take_run(std::string_view& s, std::string_view chars) {
  std::size_t n = 0;
  while (n < s.size() && chars.find(s[n]) != std::string_view::npos) ++n;
  auto run = s.substr(0, n);
  s.remove_prefix(n);
  return run;
}

// Strips "-", "*", "+", "1.", "2)" list markers (each followed by a space).
void skip_list_markers(std::string_view& s) {
  for (;;) {
    skip_spaces(s);
    if (s.size() >= 2 && (s[0] == '-' || s[0] == '*' || s[0] == '+') && is_space(s[1])) {
      s.remove_prefix(2);
      continue;
    }
    std::size_t n = 0;
    while (n < s.size() && std::isdigit(static_cast<unsigned char>(s[n]))) ++n;
    if (n > 0 && n + 1 < s.size() && (s[n] == '.' || s[n] == ')') && is_space(s[n + 1])) {
      s.remove_prefix(n + 2);
      continue;
    }
    return;
  }
}

std::optional<std::string> parse_branch_line(std::string_view line) {
  skip_list_markers(line);
  take_run(line, "#");
  skip_spaces(line);
  auto open = take_run(line, "*_");
  constexpr std::string_view label = "branch";
  if (line.size() < label.size()) return std::nullopt;
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(line[i])) != label[i]) return std::nullopt;
  }
  line.remove_prefix(label.size());
  skip_spaces(line);
  auto digits = take_run(line, "0123456789");
  if (digits.empty()) return std::nullopt;
  skip_spaces(line);
  auto close = take_run(line, "*_");
  skip_spaces(line);
  if (line.empty() || std::string_view(":.)-").find(line.front()) == std::string_view::npos) {
    return std::nullopt;
  }
  line.remove_prefix(1);
  if (!open.empty() && close.empty()) {
    // "**Branch 1:** text" closes after the separator.
    auto after = line;
    skip_spaces(after);
    if (after.substr(0, open.size()) == open) {
      line = after.substr(open.size());
      close = open;
    }
  }
  skip_spaces(line);
  while (!line.empty() && is_space(line.back())) line.remove_suffix(1);
  if (!open.empty() && close.empty() && line.size() >= open.size() &&
      line.substr(line.size() - open.size()) == open) {
    line.remove_suffix(open.size());
    while (!line.empty() && is_space(line.back())) line.remove_suffix(1);
  }
  if (line.empty()) return std::nullopt;
  return std::string(line);
}

}  // namespace

BranchSet parse_branch_set(std::string_view text, BranchSetKind kind) {
  std::vector<std::string> texts;
  std::size_t pos = 0;
  for (;;) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (auto body = parse_branch_line(line)) texts.push_back(std::move(*body));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (texts.empty()) throw EmptyBranchSet();
  return BranchSet::from_texts(kind, texts);
}

void PipelineConfig::validate() const {
  if (max_iter_val < 1) throw ConfigError("max_iter_val must be >= 1");
  if (max_iter_ana < 1) throw ConfigError("max_iter_ana must be >= 1");
  if (n_tests < 1) throw ConfigError("n_tests must be >= 1");
  if (!(temperature >= 0.0)) throw ConfigError("temperature must be >= 0");
  if (worker_count < 1) throw ConfigError("worker_count must be >= 1");
}

}  // namespace intentest
