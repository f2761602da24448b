#include "intentest/prompts.hpp"

#include "intentest/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace intentest {

namespace {

bool is_placeholder_char(char c) {
  return std::isupper(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
         c == '_';
}

// Length of the placeholder starting at body[i] == '{', or 0 if none.
std::size_t placeholder_length(std::string_view body, std::size_t i) {
  if (body[i] != '{') return 0;
  std::size_t j = i + 1;
  if (j >= body.size() || !std::isupper(static_cast<unsigned char>(body[j]))) return 0;
  while (j < body.size() && is_placeholder_char(body[j])) ++j;
  if (j >= body.size() || body[j] != '}') return 0;
  return j + 1 - i;
}

}  // namespace

std::string_view to_string(TemplateId id) {
  switch (id) {
    case TemplateId::generation: return "generation";
    case TemplateId::repair: return "repair";
    case TemplateId::code_analysis: return "code_analysis";
    case TemplateId::nld_analysis: return "nld_analysis";
    case TemplateId::test_analysis: return "test_analysis";
    case TemplateId::consistency_check: return "consistency_check";
    case TemplateId::consistency_correction: return "consistency_correction";
    case TemplateId::refinement: return "refinement";
  }
  return "?";
}

const std::vector<TemplateId>& all_template_ids() {
  static const std::vector<TemplateId> ids = {
      TemplateId::generation,        TemplateId::repair,
      TemplateId::code_analysis,     TemplateId::nld_analysis,
      TemplateId::test_analysis,     TemplateId::consistency_check,
      TemplateId::consistency_correction, TemplateId::refinement,
  };
  return ids;
}

TemplateId template_id_from_string(std::string_view name) {
  for (auto id : all_template_ids()) {
    if (to_string(id) == name) return id;
  }
  throw UnknownTemplate("unknown template id '" + std::string(name) + "'");
}

std::string normalize_template_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '\r') {
      out += '\n';
      if (i + 1 < raw.size() && raw[i + 1] == '\n') ++i;
    } else {
      out += raw[i];
    }
  }
  if (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

PromptTemplate::PromptTemplate(TemplateId id, std::string body) : id_(id), body_(std::move(body)) {
  for (std::size_t i = 0; i < body_.size(); ++i) {
    if (auto len = placeholder_length(body_, i)) {
      placeholders_.insert(body_.substr(i + 1, len - 2));
      i += len - 1;
    }
  }
}

std::string PromptTemplate::render(const std::map<std::string, std::string>& bindings) const {
  for (const auto& name : placeholders_) {
    if (!bindings.count(name)) throw MissingPlaceholder(name);
  }
  for (const auto& [name, value] : bindings) {
    if (!placeholders_.count(name)) throw UnknownPlaceholder(name);
  }
  std::string out;
  out.reserve(body_.size());
  for (std::size_t i = 0; i < body_.size(); ++i) {
    if (auto len = placeholder_length(body_, i)) {
      out += bindings.at(body_.substr(i + 1, len - 2));
      i += len - 1;
    } else {
      out += body_[i];
    }
  }
  return out;
}

const PromptCatalog& PromptCatalog::builtin() {
  static const PromptCatalog catalog = [] {
    PromptCatalog c;
    for (const auto& [name, body] : detail::builtin_template_sources()) {
      auto id = template_id_from_string(name);
      c.templates_.emplace(id, PromptTemplate(id, normalize_template_text(body)));
    }
    return c;
  }();
  return catalog;
}

PromptCatalog PromptCatalog::load(const std::filesystem::path& dir) {
  PromptCatalog c = builtin();
  for (auto id : all_template_ids()) {
    auto path = dir / (std::string(to_string(id)) + ".txt");
    std::ifstream in(path, std::ios::binary);
    if (!in) continue;
    std::stringstream ss;
    ss << in.rdbuf();
    c.templates_.insert_or_assign(id, PromptTemplate(id, normalize_template_text(ss.str())));
  }
  return c;
}

const PromptTemplate& PromptCatalog::get(TemplateId id) const {
  auto it = templates_.find(id);
  if (it == templates_.end()) {
    throw UnknownTemplate("template '" + std::string(to_string(id)) + "' is not in the catalog");
  }
  return it->second;
}

}  // namespace intentest
