#include "intentest/bench.hpp"

#include "intentest/errors.hpp"
#include "intentest/java_source.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace intentest {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string rstrip(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

std::string strip(std::string s) {
  s = rstrip(std::move(s));
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

std::string required_text(const fs::path& dir, const std::string& file, const std::string& id,
                          const std::string& field) {
  auto text = read_file(dir / file);
  if (!text) throw SchemaError(id, field, "missing file " + (dir / file).string());
  auto s = rstrip(*text);
  if (strip(s).empty()) throw SchemaError(id, field, file + " is empty");
  return s;
}

std::vector<std::string> string_list(const json& j, const char* key, const std::string& id) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) throw SchemaError(id, std::string("context.") + key, "expected an array of strings");
  for (const auto& v : j[key]) {
    if (!v.is_string()) throw SchemaError(id, std::string("context.") + key, "expected an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

fs::path Dataset::sample_dir(std::string_view id) const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].id == id) return sample_dirs[i];
  }
  return {};
}

Dataset load_dataset(const fs::path& root) {
  auto manifest_text = read_file(root / "manifest.json");
  if (!manifest_text) throw ConfigError("no manifest.json in " + root.string());
  json manifest;
  try {
    manifest = json::parse(*manifest_text);
  } catch (const json::exception& e) {
    throw ConfigError("malformed manifest.json in " + root.string() + ": " + e.what());
  }
  if (!manifest.is_object() || !manifest.contains("samples") || !manifest["samples"].is_array()) {
    throw ConfigError("manifest.json needs a \"samples\" array");
  }

  Dataset ds;
  ds.root = root;
  ds.name = manifest.value("name", root.filename().string());
  std::set<std::string> ids;
  std::size_t index = 0;
  for (const auto& entry : manifest["samples"]) {
    const std::string where = "#" + std::to_string(index++);
    if (!entry.is_object()) throw SchemaError(where, "manifest", "sample entry is not an object");
    if (!entry.contains("id") || !entry["id"].is_string() || entry["id"].get<std::string>().empty()) {
      throw SchemaError(where, "id", "missing or not a non-empty string");
    }
    BenchmarkSample s;
    s.id = entry["id"].get<std::string>();
    if (!ids.insert(s.id).second) throw DuplicateId(s.id);
    auto text_field = [&](const char* key, bool required) -> std::string {
      if (!entry.contains(key)) {
        if (required) throw SchemaError(s.id, key, "missing");
        return {};
      }
      if (!entry[key].is_string()) throw SchemaError(s.id, key, "not a string");
      return entry[key].get<std::string>();
    };
    s.project = text_field("project", true);
    s.focal_signature = text_field("focal_signature", true);
    s.package_name = text_field("package", false);
    if (entry.contains("focal_span")) {
      const auto& span = entry["focal_span"];
      if (!span.is_array() || span.size() != 2 || !span[0].is_number_integer() || !span[1].is_number_integer()) {
        throw SchemaError(s.id, "focal_span", "expected [first, last] line numbers");
      }
      LineSpan ls{span[0].get<int>(), span[1].get<int>()};
      if (ls.first < 1 || ls.last < ls.first) throw SchemaError(s.id, "focal_span", "invalid line range");
      s.focal_span = ls;
    }
    auto dir = root / (entry.contains("dir") ? entry["dir"].get<std::string>() : s.id);

    s.buggy_source = required_text(dir, "buggy.java", s.id, "buggy_source");
    s.fixed_source = required_text(dir, "fixed.java", s.id, "fixed_source");
    s.nld = strip(required_text(dir, "nld.txt", s.id, "nld"));
    if (s.buggy_source == s.fixed_source) {
      throw SchemaError(s.id, "fixed_source", "identical to buggy_source");
    }

    auto context_text = read_file(dir / "context.json");
    if (!context_text) throw SchemaError(s.id, "context", "missing file " + (dir / "context.json").string());
    json context;
    try {
      context = json::parse(*context_text);
    } catch (const json::exception& e) {
      throw SchemaError(s.id, "context", e.what());
    }
    if (!context.is_object() || !context.contains("class_declaration") || !context["class_declaration"].is_string()) {
      throw SchemaError(s.id, "context.class_declaration", "missing or not a string");
    }
    s.context.class_declaration = context["class_declaration"].get<std::string>();
    s.context.fields = string_list(context, "fields", s.id);
    s.context.method_signatures = string_list(context, "method_signatures", s.id);
    s.context.imports = string_list(context, "imports", s.id);
    if (s.class_name().empty()) {
      throw SchemaError(s.id, "context.class_declaration", "declares no class name");
    }
    if (s.method_name().empty()) throw SchemaError(s.id, "focal_signature", "no method name found");

    ds.samples.push_back(std::move(s));
    ds.sample_dirs.push_back(dir);
  }
  return ds;
}

// ---------------------------------------------------------------- NLD protocol

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  auto is_word = [](unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; };
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
    } else if (is_word(c)) {
      std::size_t j = i;
      while (j < text.size() && is_word(static_cast<unsigned char>(text[j]))) ++j;
      tokens.emplace_back(text.substr(i, j - i));
      i = j;
    } else {
      tokens.emplace_back(1, text[i]);
      ++i;
    }
  }
  return tokens;
}

namespace {

std::string regex_escape(std::string_view s) {
  static const std::string special = R"(\^$.|?*+()[]{})";
  std::string out;
  for (char c : s) {
    if (special.find(c) != std::string::npos) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string first_sentence(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '.' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      return std::string(text.substr(0, i + 1));
    }
  }
  return std::string(text);
}

bool mentions_word(const std::string& text, const std::string& word) {
  std::regex re("(^|[^A-Za-z0-9_])" + regex_escape(word) + "([^A-Za-z0-9_]|$)");
  return std::regex_search(text, re);
}

}  // namespace

std::vector<NldViolation> check_nld_protocol(const BenchmarkSample& sample) {
  std::vector<NldViolation> out;
  const auto method = sample.method_name();
  const auto cls = sample.class_name();

  const auto sentence = first_sentence(sample.nld);
  std::regex pattern("^The\\s+`?" + regex_escape(method) + "(\\(\\))?`?\\s+method\\s+(in|of)\\s+the\\s+`?" +
                     regex_escape(cls) + "`?\\s+class\\b");
  if (!std::regex_search(sentence, pattern)) {
    out.push_back({"functional_abstraction", "first sentence should begin \"The " + method + " method in the " +
                                                 cls + " class\""});
  }

  const auto params = java::parameter_names(sample.focal_signature);
  if (params.empty()) {
    static const std::regex none(
        R"(\b(no|without|zero)\s+(input\s+)?(parameters?|arguments?|inputs?)\b|\btakes\s+no\b)", std::regex::icase);
    if (!std::regex_search(sample.nld, none)) {
      out.push_back({"parameters", "method has no parameters; say so explicitly"});
    }
  } else {
    for (const auto& p : params) {
      if (!mentions_word(sample.nld, p)) out.push_back({"parameters", "parameter '" + p + "' is not mentioned"});
    }
  }

  const auto ret = java::return_type(sample.focal_signature);
  if (!ret.empty() && ret != "void") {
    static const std::regex returns(R"(\b(returns?|returned|return\s+value|throws?|thrown)\b)", std::regex::icase);
    if (!std::regex_search(sample.nld, returns)) {
      out.push_back({"return", "return value (" + ret + ") is not described"});
    }
  }

  const auto n = static_cast<int>(tokenize(sample.nld).size());
  if (n < kMinNldTokens || n > kMaxNldTokens) {
    out.push_back({"length", std::to_string(n) + " tokens, expected " + std::to_string(kMinNldTokens) + ".." +
                                 std::to_string(kMaxNldTokens)});
  }
  return out;
}

// ---------------------------------------------------------------- stats

ColumnStats column_stats(std::vector<double> values) {
  if (values.empty()) throw EmptyDataset();
  std::sort(values.begin(), values.end());
  ColumnStats s;
  const std::size_t n = values.size();
  s.min = values.front();
  s.max = values.back();
  s.median = n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(n);
  double sq = 0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.sd = std::sqrt(sq / static_cast<double>(n));
  return s;
}

StatsTable dataset_stats(const std::vector<BenchmarkSample>& samples) {
  if (samples.empty()) throw EmptyDataset();
  std::vector<double> buggy, fixed, nld;
  for (const auto& s : samples) {
    buggy.push_back(static_cast<double>(tokenize(s.buggy_source).size()));
    fixed.push_back(static_cast<double>(tokenize(s.fixed_source).size()));
    nld.push_back(static_cast<double>(tokenize(s.nld).size()));
  }
  return {samples.size(), column_stats(buggy), column_stats(fixed), column_stats(nld)};
}

std::string format_stats_table(const StatsTable& t, std::string_view dataset_name) {
  std::ostringstream out;
  out << dataset_name << " (# Bugs: " << t.n_samples << ")\n";
  out << "| Metric | Buggy (Tokens) | Fixed (Tokens) | NLD (Tokens) |\n";
  out << "|---|---|---|---|\n";
  auto row = [&](const char* label, auto get) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "| %s | %.1f | %.1f | %.1f |\n", label, get(t.buggy), get(t.fixed), get(t.nld));
    out << buf;
  };
  row("Max.", [](const ColumnStats& c) { return c.max; });
  row("Min.", [](const ColumnStats& c) { return c.min; });
  row("Med.", [](const ColumnStats& c) { return c.median; });
  row("Avg.", [](const ColumnStats& c) { return c.mean; });
  row("S.D.", [](const ColumnStats& c) { return c.sd; });
  return out.str();
}

// ---------------------------------------------------------------- import

namespace {

// Member text without leading comments.
std::string code_start(const std::string& member) {
  auto masked = java::mask_non_code(member);
  std::size_t i = 0;
  while (i < masked.size() && std::isspace(static_cast<unsigned char>(masked[i]))) ++i;
  return member.substr(i);
}

// Declaration text up to the body (methods) or the terminator (fields).
std::string header_of(const std::string& member) {
  auto masked = java::mask_non_code(member);
  auto brace = masked.find('{');
  auto head = member.substr(0, brace == std::string::npos ? member.size() : brace);
  std::string flat;
  for (char c : head) {
    bool space = std::isspace(static_cast<unsigned char>(c));
    if (space && (flat.empty() || flat.back() == ' ')) continue;
    flat.push_back(space ? ' ' : c);
  }
  while (!flat.empty() && (flat.back() == ' ' || flat.back() == ';')) flat.pop_back();
  return flat;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

struct FocalPick {
  std::string source;
  std::string signature;
  std::vector<std::string> other_signatures;
  std::vector<std::string> fields;
};

std::optional<FocalPick> pick_focal(const java::UnitParts& parts, const std::string& stem) {
  // Constructors share the class (and usually the file) name; never pick one.
  const auto cls = declared_class_name(parts.type_header);
  auto is_method = [&](const java::Member& m) { return !m.name.empty() && m.name != cls; };
  std::optional<std::size_t> chosen;
  for (std::size_t i = 0; i < parts.members.size(); ++i) {
    if (is_method(parts.members[i]) && lower(parts.members[i].name) == lower(stem)) {
      chosen = i;
      break;
    }
  }
  if (!chosen) {
    for (std::size_t i = 0; i < parts.members.size(); ++i) {
      if (is_method(parts.members[i])) {
        chosen = i;
        break;
      }
    }
  }
  if (!chosen) return std::nullopt;
  FocalPick pick;
  pick.source = code_start(parts.members[*chosen].text);
  pick.signature = header_of(pick.source);
  static const std::regex type_decl(R"(\b(class|interface|enum|record)\s+\w)");
  for (std::size_t i = 0; i < parts.members.size(); ++i) {
    if (i == *chosen) continue;
    const auto code = code_start(parts.members[i].text);
    if (!parts.members[i].name.empty()) {
      pick.other_signatures.push_back(header_of(code));
    } else if (!code.empty() && code.front() != '{' && code.rfind("static {", 0) != 0 &&
               !std::regex_search(header_of(code), type_decl)) {
      pick.fields.push_back(header_of(code) + ";");
    }
  }
  return pick;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

}  // namespace

ImportResult import_pairs(const ImportOptions& options) {
  ImportResult result;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(options.buggy_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".java") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  fs::create_directories(options.out_dir);

  json samples = json::array();
  for (const auto& buggy_path : files) {
    const auto stem = buggy_path.stem().string();
    const auto fixed_path = options.fixed_dir / buggy_path.filename();
    auto buggy_text = read_file(buggy_path);
    auto fixed_text = read_file(fixed_path);
    if (!buggy_text || !fixed_text) {
      result.skipped.push_back(buggy_path.filename().string() + ": no fixed counterpart");
      continue;
    }
    auto buggy_parts = java::split_unit(*buggy_text);
    auto fixed_parts = java::split_unit(*fixed_text);
    auto buggy = pick_focal(buggy_parts, stem);
    auto fixed = pick_focal(fixed_parts, stem);
    if (!buggy || !fixed || !buggy_parts.has_class) {
      result.skipped.push_back(buggy_path.filename().string() + ": no focal method found");
      continue;
    }
    if (buggy->source == fixed->source) {
      result.skipped.push_back(buggy_path.filename().string() + ": buggy and fixed methods are identical");
      continue;
    }

    const auto dir = options.out_dir / stem;
    fs::create_directories(dir);
    write_text(dir / "buggy.java", buggy->source);
    write_text(dir / "fixed.java", fixed->source);
    std::string nld;
    if (options.nld_dir) {
      if (auto text = read_file(*options.nld_dir / (stem + ".txt"))) nld = strip(*text);
    }
    if (nld.empty()) result.missing_nld.push_back(stem);
    write_text(dir / "nld.txt", nld);

    json context = {{"class_declaration", header_of(fixed_parts.type_header)},
                    {"fields", fixed->fields},
                    {"method_signatures", fixed->other_signatures},
                    {"imports", fixed_parts.imports}};
    write_text(dir / "context.json", context.dump(2));

    json entry = {{"id", stem}, {"project", options.project}, {"focal_signature", fixed->signature}};
    if (!fixed_parts.package_name.empty()) entry["package"] = fixed_parts.package_name;
    samples.push_back(entry);
    result.imported.push_back(stem);
  }
  json manifest = {{"name", options.dataset_name}, {"samples", samples}};
  write_text(options.out_dir / "manifest.json", manifest.dump(2));
  return result;
}

}  // namespace intentest
