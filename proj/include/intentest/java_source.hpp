#pragma once

// Lightweight, brace-aware handling of Java source text. Nothing here parses
// Java properly; it masks literals and comments and matches braces, which is
// enough to split LLM replies into members and to scaffold focal classes.

#include "intentest/core.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace intentest::java {

/// Copy of `source` where comments, string/char literals and text blocks are
/// blanked to spaces (newlines kept), so offsets and line numbers line up.
std::string mask_non_code(std::string_view source);

/// 1-based line number of byte `offset`.
int line_of(std::string_view text, std::size_t offset);

/// Contents of ``` fenced blocks, in order. Empty if the reply has none.
std::vector<std::string> fenced_blocks(std::string_view reply);

struct Member {
  std::string text;        // trimmed, including leading comments/annotations
  bool is_test = false;    // carries @Test, @ParameterizedTest, ...
  std::string name;        // method name, empty for fields and blocks
};

struct UnitParts {
  std::string package_name;          // from the package statement, if any
  std::vector<std::string> imports;  // full "import ...;" statements
  bool has_class = false;
  std::string type_header;           // first top-level type declaration, up to its '{'
  std::vector<Member> members;       // members of every top-level class body
};

/// Splits a compilation unit (or a bare run of members) into imports and members.
UnitParts split_unit(std::string_view source);

/// Name of the method declared by a member, or empty if it is not a method.
std::string method_name_of(std::string_view member);

/// Renames the method declared by `member` (first declaration only).
std::string rename_method(std::string_view member, std::string_view new_name);

struct RenderedTestClass {
  std::string text;
  std::map<std::string, LineSpan> test_lines;  // test_id -> span of its method
};

/// Assembles one JUnit test class from the suite: union of imports, union of
/// shared members, then every test method in suite order.
RenderedTestClass render_test_class(const TestSuite& suite, std::string_view package_name,
                                    std::string_view class_name);

/// Name of the generated test class for a sample.
std::string test_class_name(const BenchmarkSample& sample);

struct SplicedClass {
  std::string text;
  LineSpan focal_span;
};

/// The focal class rebuilt from its context with one version of the method.
/// Throws ScaffoldError when no class can be declared.
SplicedClass splice_focal_class(const BenchmarkSample& sample, ProgramVersion version);

/// Class skeleton (package, imports, declaration, fields, signatures) for prompts.
std::string class_context_skeleton(const BenchmarkSample& sample);

std::vector<std::string> parameter_names(std::string_view signature);

/// Declared return type, or empty for constructors.
std::string return_type(std::string_view signature);

}  // namespace intentest::java
