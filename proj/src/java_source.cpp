#include "intentest/java_source.hpp"

#include "intentest/errors.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>

namespace intentest::java {

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_space(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

bool starts_with_word(std::string_view s, std::string_view word) {
  return s.substr(0, word.size()) == word &&
         (s.size() == word.size() || !is_ident_char(s[word.size()]));
}

// Finds the closing brace matching the '{' at `open` in masked text.
std::size_t matching_brace(std::string_view masked, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < masked.size(); ++i) {
    if (masked[i] == '{') {
      ++depth;
    } else if (masked[i] == '}') {
      if (--depth == 0) return i;
    }
  }
  return std::string_view::npos;
}

bool contains_type_keyword(std::string_view masked) {
  static const std::regex re(R"((^|[^\w$])(class|interface|enum|record)\s+[A-Za-z_$])");
  std::string s(masked);
  return std::regex_search(s, re);
}

// Header of a member: everything before its first '{' or ';' at paren depth 0.
std::string_view member_header(std::string_view masked_member) {
  int parens = 0;
  for (std::size_t i = 0; i < masked_member.size(); ++i) {
    char c = masked_member[i];
    if (c == '(') ++parens;
    if (c == ')') --parens;
    if (parens == 0 && (c == '{' || c == ';' || c == '=')) return masked_member.substr(0, i);
  }
  return masked_member;
}

// Position just past any leading annotations ("@Foo", "@a.b.Foo(...)").
std::size_t skip_annotations(std::string_view header) {
  std::size_t i = 0;
  for (;;) {
    while (i < header.size() && std::isspace(static_cast<unsigned char>(header[i]))) ++i;
    if (i >= header.size() || header[i] != '@') return i;
    if (header.substr(i, 10) == "@interface") return i;
    ++i;
    while (i < header.size() && (is_ident_char(header[i]) || header[i] == '.')) ++i;
    std::size_t j = i;
    while (j < header.size() && std::isspace(static_cast<unsigned char>(header[j]))) ++j;
    if (j < header.size() && header[j] == '(') {
      int depth = 0;
      for (; j < header.size(); ++j) {
        if (header[j] == '(') ++depth;
        if (header[j] == ')' && --depth == 0) {
          ++j;
          break;
        }
      }
      i = j;
    }
  }
}

// Offset of the method-name identifier within `member`, or npos.
std::size_t method_name_offset(std::string_view member) {
  std::string masked = mask_non_code(member);
  std::string_view header = member_header(masked);
  std::size_t start = skip_annotations(header);
  auto paren = header.find('(', start);
  if (paren == std::string_view::npos) return std::string_view::npos;
  std::size_t end = paren;
  while (end > start && std::isspace(static_cast<unsigned char>(header[end - 1]))) --end;
  std::size_t begin = end;
  while (begin > start && is_ident_char(header[begin - 1])) --begin;
  if (begin == end) return std::string_view::npos;
  auto name = header.substr(begin, end - begin);
  // Control-flow keywords never name a method; a bare statement is not a member.
  static const std::set<std::string_view> keywords = {"if", "for", "while", "switch", "catch",
                                                      "synchronized", "return", "new", "throw"};
  if (keywords.count(name) || std::isdigit(static_cast<unsigned char>(name.front()))) {
    return std::string_view::npos;
  }
  return begin;
}

bool has_test_annotation(std::string_view member) {
  static const std::regex re(
      R"(@(?:[\w$]+\.)*(Test|ParameterizedTest|RepeatedTest|TestFactory|TestTemplate)(?![\w$]))");
  std::string masked = mask_non_code(member);
  std::string header(member_header(masked));
  return std::regex_search(header, re);
}

// Removes up to `column` leading blanks from every line after the first, so a
// member cut out of an indented class body starts at column 0 throughout.
std::string dedent_continuation(std::string_view text, std::size_t column) {
  std::string out;
  std::size_t pos = 0;
  bool first = true;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!first) {
      std::size_t k = 0;
      while (k < column && k < line.size() && (line[k] == ' ' || line[k] == '\t')) ++k;
      line.remove_prefix(k);
    }
    out.append(line);
    if (nl == std::string_view::npos) break;
    out.push_back('\n');
    pos = nl + 1;
    first = false;
  }
  return out;
}

std::vector<Member> split_members(std::string_view source, std::string_view masked,
                                  std::size_t begin, std::size_t end) {
  std::vector<Member> out;
  std::size_t prev_end = begin;
  std::size_t i = begin;
  while (i < end) {
    while (i < end && std::isspace(static_cast<unsigned char>(masked[i]))) ++i;
    if (i >= end) break;
    if (masked[i] == '}' || masked[i] == ';') {  // stray terminator
      ++i;
      prev_end = i;
      continue;
    }
    int depth = 0;
    int parens = 0;
    bool initializer = false;
    std::size_t j = i;
    std::size_t member_end = std::string_view::npos;
    for (; j < end; ++j) {
      char c = masked[j];
      if (c == '(' || c == '[') ++parens;
      else if (c == ')' || c == ']') --parens;
      else if (c == '{') ++depth;
      else if (c == '}') {
        --depth;
        if (depth == 0 && parens == 0 && !initializer) {
          member_end = j + 1;
          break;
        }
      } else if (c == ';' && depth == 0 && parens == 0) {
        member_end = j + 1;
        break;
      } else if (c == '=' && depth == 0 && parens == 0) {
        initializer = true;
      }
    }
    if (member_end == std::string_view::npos) member_end = end;
    auto text = trim(source.substr(prev_end, member_end - prev_end));
    if (!text.empty() && !all_space(mask_non_code(text))) {
      const auto start = static_cast<std::size_t>(text.data() - source.data());
      const auto line_start = source.rfind('\n', start == 0 ? 0 : start - 1);
      const auto column = line_start == std::string_view::npos || start == 0 ? start : start - line_start - 1;
      Member m;
      m.text = dedent_continuation(text, column);
      m.is_test = has_test_annotation(m.text);
      m.name = method_name_of(m.text);
      out.push_back(std::move(m));
    }
    i = member_end;
    prev_end = member_end;
  }
  return out;
}

std::string normalize_statement(std::string_view s, std::string_view keyword) {
  auto t = std::string(trim(s));
  if (t.empty()) return t;
  if (!starts_with_word(t, keyword)) t = std::string(keyword) + " " + t;
  if (t.back() != ';') t += ';';
  return t;
}

std::string indent(std::string_view text, std::string_view prefix) {
  std::string out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!line.empty()) out.append(prefix).append(line);
    if (nl == std::string_view::npos) break;
    out += '\n';
    pos = nl + 1;
  }
  return out;
}

int count_lines(std::string_view s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

std::string mask_non_code(std::string_view src) {
  std::string out(src);
  enum class State { code, line_comment, block_comment, string, character, text_block };
  State st = State::code;
  auto blank = [&](std::size_t i) {
    if (out[i] != '\n') out[i] = ' ';
  };
  for (std::size_t i = 0; i < src.size(); ++i) {
    char c = src[i];
    char next = i + 1 < src.size() ? src[i + 1] : '\0';
    switch (st) {
      case State::code:
        if (c == '/' && next == '/') {
          st = State::line_comment;
          blank(i);
        } else if (c == '/' && next == '*') {
          st = State::block_comment;
          blank(i);
          blank(++i);
        } else if (c == '"' && src.substr(i, 3) == "\"\"\"") {
          st = State::text_block;
          blank(i);
          blank(++i);
          blank(++i);
        } else if (c == '"') {
          st = State::string;
          blank(i);
        } else if (c == '\'') {
          st = State::character;
          blank(i);
        }
        break;
      case State::line_comment:
        if (c == '\n') st = State::code;
        else blank(i);
        break;
      case State::block_comment:
        blank(i);
        if (c == '*' && next == '/') {
          blank(++i);
          st = State::code;
        }
        break;
      case State::string:
      case State::character: {
        char quote = st == State::string ? '"' : '\'';
        blank(i);
        if (c == '\\' && i + 1 < src.size()) {
          blank(++i);
        } else if (c == quote || c == '\n') {
          st = State::code;
        }
        break;
      }
      case State::text_block:
        blank(i);
        if (c == '\\' && i + 1 < src.size()) {
          blank(++i);
        } else if (src.substr(i, 3) == "\"\"\"") {
          blank(++i);
          blank(++i);
          st = State::code;
        }
        break;
    }
  }
  return out;
}

int line_of(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

std::vector<std::string> fenced_blocks(std::string_view reply) {
  std::vector<std::string> blocks;
  std::size_t pos = 0;
  bool inside = false;
  std::string current;
  while (pos <= reply.size()) {
    auto nl = reply.find('\n', pos);
    auto line = reply.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto t = trim(line);
    if (t.substr(0, 3) == "```") {
      if (inside) {
        blocks.push_back(std::move(current));
        current.clear();
        inside = false;
      } else {
        inside = true;
      }
    } else if (inside) {
      current.append(line).push_back('\n');
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  // An unterminated final fence still carries code (replies are often cut off).
  if (inside && !all_space(current)) blocks.push_back(std::move(current));
  return blocks;
}

UnitParts split_unit(std::string_view source) {
  UnitParts parts;
  std::string masked = mask_non_code(source);
  std::size_t pos = 0;
  const std::size_t n = source.size();
  while (pos < n) {
    while (pos < n && std::isspace(static_cast<unsigned char>(masked[pos]))) ++pos;
    if (pos >= n) break;
    std::string_view rest(masked.data() + pos, n - pos);
    if (starts_with_word(rest, "package") || starts_with_word(rest, "import")) {
      auto semi = masked.find(';', pos);
      if (semi == std::string::npos) semi = n - 1;
      if (starts_with_word(rest, "import")) {
        parts.imports.emplace_back(trim(source.substr(pos, semi + 1 - pos)));
      } else {
        parts.package_name = trim(std::string_view(masked).substr(pos + 7, semi - pos - 7));
      }
      pos = semi + 1;
      continue;
    }
    auto brace = masked.find('{', pos);
    auto semi = masked.find(';', pos);
    bool is_type = brace != std::string::npos && (semi == std::string::npos || brace < semi) &&
                   contains_type_keyword(std::string_view(masked).substr(pos, brace - pos));
    if (!is_type) {
      // Bare members (no enclosing class) from here to the end.
      auto members = split_members(source, masked, pos, n);
      parts.members.insert(parts.members.end(), members.begin(), members.end());
      break;
    }
    auto close = matching_brace(masked, brace);
    if (close == std::string::npos) close = n;
    if (!parts.has_class) parts.type_header = trim(source.substr(pos, brace - pos));
    parts.has_class = true;
    auto members = split_members(source, masked, brace + 1, close);
    parts.members.insert(parts.members.end(), members.begin(), members.end());
    pos = close == n ? n : close + 1;
  }
  return parts;
}

std::string method_name_of(std::string_view member) {
  auto offset = method_name_offset(member);
  if (offset == std::string_view::npos) return {};
  std::size_t end = offset;
  while (end < member.size() && is_ident_char(member[end])) ++end;
  return std::string(member.substr(offset, end - offset));
}

std::string rename_method(std::string_view member, std::string_view new_name) {
  auto offset = method_name_offset(member);
  if (offset == std::string_view::npos) return std::string(member);
  std::size_t end = offset;
  while (end < member.size() && is_ident_char(member[end])) ++end;
  std::string out(member.substr(0, offset));
  out.append(new_name);
  out.append(member.substr(end));
  return out;
}

RenderedTestClass render_test_class(const TestSuite& suite, std::string_view package_name,
                                    std::string_view class_name) {
  std::vector<std::string> imports;
  std::vector<std::string> members;
  std::set<std::string> seen_imports;
  std::set<std::string> seen_members;
  for (const auto& t : suite.tests) {
    for (const auto& imp : t.imports) {
      if (seen_imports.insert(imp).second) imports.push_back(imp);
    }
    for (const auto& m : t.members) {
      if (seen_members.insert(m).second) members.push_back(m);
    }
  }
  if (imports.empty()) {
    imports = {"import org.junit.jupiter.api.Test;", "import static org.junit.jupiter.api.Assertions.*;"};
  }

  RenderedTestClass out;
  std::string& text = out.text;
  if (!package_name.empty()) text += "package " + std::string(package_name) + ";\n\n";
  for (const auto& imp : imports) text += imp + "\n";
  text += "\npublic class " + std::string(class_name) + " {\n";
  for (const auto& m : members) text += "\n" + indent(m, "    ") + "\n";
  for (const auto& t : suite.tests) {
    text += "\n";
    int first = count_lines(text) + 1;
    text += indent(t.source, "    ") + "\n";
    out.test_lines[t.test_id] = LineSpan{first, count_lines(text)};
  }
  text += "}\n";
  return out;
}

std::string test_class_name(const BenchmarkSample& sample) {
  auto cls = sample.class_name();
  return (cls.empty() ? std::string("Focal") : cls) + "GeneratedTest";
}

SplicedClass splice_focal_class(const BenchmarkSample& sample, ProgramVersion version) {
  auto decl = std::string(trim(sample.context.class_declaration));
  if (!decl.empty() && decl.back() == '{') decl = std::string(trim(decl.substr(0, decl.size() - 1)));
  if (decl.empty() || declared_class_name(decl).empty()) {
    throw ScaffoldError("sample '" + sample.id + "' has no usable class declaration");
  }
  SplicedClass out;
  std::string& text = out.text;
  if (!sample.package_name.empty()) text += "package " + sample.package_name + ";\n\n";
  for (const auto& imp : sample.context.imports) text += normalize_statement(imp, "import") + "\n";
  if (!sample.context.imports.empty()) text += "\n";
  text += decl + " {\n";
  for (const auto& f : sample.context.fields) {
    auto field = std::string(trim(f));
    if (!field.empty() && field.back() != ';' && field.back() != '}') field += ';';
    text += "    " + field + "\n";
  }
  text += "\n";
  const std::string& method = sample.source_for(version);
  int first = count_lines(text) + 1;
  text += method;
  if (method.empty() || method.back() != '\n') text += '\n';
  out.focal_span = LineSpan{first, count_lines(text)};
  text += "}\n";
  return out;
}

std::string class_context_skeleton(const BenchmarkSample& sample) {
  std::string text;
  if (!sample.package_name.empty()) text += "package " + sample.package_name + ";\n";
  for (const auto& imp : sample.context.imports) text += normalize_statement(imp, "import") + "\n";
  auto decl = std::string(trim(sample.context.class_declaration));
  if (!decl.empty() && decl.back() == '{') decl = std::string(trim(decl.substr(0, decl.size() - 1)));
  text += decl + " {\n";
  for (const auto& f : sample.context.fields) {
    auto field = std::string(trim(f));
    if (!field.empty() && field.back() != ';') field += ';';
    text += "    " + field + "\n";
  }
  for (const auto& sig : sample.context.method_signatures) {
    auto s = std::string(trim(sig));
    if (!s.empty() && s.back() != ';') s += ';';
    text += "    " + s + "\n";
  }
  text += "}";
  return text;
}

std::vector<std::string> parameter_names(std::string_view signature) {
  std::vector<std::string> names;
  auto open = signature.find('(');
  auto close = signature.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close <= open) return names;
  auto params = signature.substr(open + 1, close - open - 1);
  int angle = 0;
  std::size_t start = 0;
  auto flush = [&](std::string_view p) {
    p = trim(p);
    // Strip trailing array brackets on the name ("int a[]").
    while (!p.empty() && (p.back() == ']' || p.back() == '[' || std::isspace(static_cast<unsigned char>(p.back())))) {
      p.remove_suffix(1);
    }
    std::size_t end = p.size();
    std::size_t begin = end;
    while (begin > 0 && is_ident_char(p[begin - 1])) --begin;
    if (begin < end) names.emplace_back(p.substr(begin, end - begin));
  };
  for (std::size_t i = 0; i < params.size(); ++i) {
    char c = params[i];
    if (c == '<') ++angle;
    else if (c == '>') --angle;
    else if (c == ',' && angle == 0) {
      flush(params.substr(start, i - start));
      start = i + 1;
    }
  }
  flush(params.substr(start));
  return names;
}

std::string return_type(std::string_view signature) {
  auto open = signature.find('(');
  auto head = trim(signature.substr(0, open));
  // Drop annotations, then split into tokens at generic depth 0.
  std::string h(head.substr(skip_annotations(head)));
  std::vector<std::string> tokens;
  std::string cur;
  int angle = 0;
  for (char c : h) {
    if (c == '<') ++angle;
    if (c == '>') --angle;
    if (std::isspace(static_cast<unsigned char>(c)) && angle == 0) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  static const std::set<std::string> modifiers = {"public", "protected", "private", "static", "final",
                                                  "abstract", "synchronized", "native", "strictfp",
                                                  "default"};
  std::vector<std::string> rest;
  for (auto& t : tokens) {
    if (!modifiers.count(t) && t.front() != '<') rest.push_back(t);
  }
  if (rest.size() < 2) return {};
  return rest[rest.size() - 2];
}

}  // namespace intentest::java
