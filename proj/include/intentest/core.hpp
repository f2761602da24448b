#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace intentest {

enum class ProgramVersion { buggy, fixed };
enum class TestOrigin { initial, repaired, refined };
enum class CompileStatus { unknown, ok, failed };
enum class RunVerdict { unknown, pass, fail, error };
enum class BranchSetKind { code_derived, correct, test_case, finalized };
enum class Verdict { consistent, inconsistent };

std::string_view to_string(ProgramVersion v);
std::string_view to_string(TestOrigin o);
std::string_view to_string(CompileStatus s);
std::string_view to_string(RunVerdict v);
std::string_view to_string(BranchSetKind k);
std::string_view to_string(Verdict v);

RunVerdict run_verdict_from_string(std::string_view s);

/// Inclusive, 1-based line range inside a source file.
struct LineSpan {
  int first = 0;
  int last = 0;

  bool contains(int line) const { return line >= first && line <= last; }
  friend bool operator==(const LineSpan&, const LineSpan&) = default;
};

/// Class-level context shown to the model next to the focal method.
struct FocalContext {
  std::string class_declaration;  // e.g. "public class JsonWriter implements Closeable"
  std::vector<std::string> fields;
  std::vector<std::string> method_signatures;
  std::vector<std::string> imports;

  friend bool operator==(const FocalContext&, const FocalContext&) = default;
};

/// Simple name of the class declared by `class_declaration`, or empty.
std::string declared_class_name(std::string_view class_declaration);

/// One buggy/fixed focal-method pair with its description; the unit of evaluation.
struct BenchmarkSample {
  std::string id;
  std::string project;
  std::string buggy_source;
  std::string fixed_source;
  std::string nld;
  FocalContext context;
  std::string focal_signature;
  std::string package_name;             // empty for the default package
  std::optional<LineSpan> focal_span;   // span in the original host file, if known

  std::string class_name() const { return declared_class_name(context.class_declaration); }
  /// Method name parsed from focal_signature.
  std::string method_name() const;
  const std::string& source_for(ProgramVersion v) const {
    return v == ProgramVersion::buggy ? buggy_source : fixed_source;
  }
};

/// A candidate test method plus the class preamble it was extracted with.
struct GeneratedTest {
  std::string test_id;
  std::string method_name;
  std::string source;                 // the annotated test method
  std::vector<std::string> imports;   // import lines of the enclosing reply block
  std::vector<std::string> members;   // non-test members (fields, fixtures, helpers)
  TestOrigin origin = TestOrigin::initial;
  CompileStatus compile_status = CompileStatus::unknown;
  RunVerdict run_fixed = RunVerdict::unknown;
  RunVerdict run_buggy = RunVerdict::unknown;
  int repair_attempts = 0;
  int refinement_round = 0;

  /// Moves compile_status forward; ok never returns to unknown.
  void set_compile_status(CompileStatus next);
  /// repair_attempts only grows.
  void set_repair_attempts(int attempts);
  /// run_* may be known only once the test compiled.
  bool lifecycle_consistent() const;
};

struct TestSuite {
  std::vector<GeneratedTest> tests;

  bool empty() const { return tests.empty(); }
  std::size_t size() const { return tests.size(); }
  std::vector<std::string> test_ids() const;
};

struct Branch {
  int index = 0;
  std::string text;

  friend bool operator==(const Branch&, const Branch&) = default;
};

/// Ordered natural-language logical branches.
struct BranchSet {
  BranchSetKind kind = BranchSetKind::code_derived;
  std::vector<Branch> branches;

  static BranchSet from_texts(BranchSetKind kind, const std::vector<std::string>& texts);
  std::vector<std::string> texts() const;
  bool valid() const;
  bool empty() const { return branches.empty(); }
  std::size_t size() const { return branches.size(); }
};

/// "Branch N: text" lines joined by LF, no trailing newline.
std::string serialize_branch_set(const BranchSet& bs);

/// Extracts "Branch N:" lines (tolerating list markers, numbering and bold
/// markup), renumbering from 1. Throws EmptyBranchSet if nothing matches.
BranchSet parse_branch_set(std::string_view text, BranchSetKind kind);

struct ConsistencyVerdict {
  Verdict verdict = Verdict::inconsistent;
  std::string raw_reply;
};

struct PipelineConfig {
  int max_iter_val = 5;
  int max_iter_ana = 5;
  int n_tests = 5;
  double temperature = 0.0;
  std::string backend_id = "replay";
  std::string oracle_id = "mock";
  std::filesystem::path workdir = "runs";
  int worker_count = 1;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

}  // namespace intentest
