#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace intentest {

enum class TemplateId {
  generation,
  repair,
  code_analysis,
  nld_analysis,
  test_analysis,
  consistency_check,
  consistency_correction,
  refinement,
};

std::string_view to_string(TemplateId id);
TemplateId template_id_from_string(std::string_view name);
const std::vector<TemplateId>& all_template_ids();

/// A prompt body with `{NAME}` placeholders (NAME is upper-case [A-Z0-9_]).
class PromptTemplate {
 public:
  PromptTemplate(TemplateId id, std::string body);

  TemplateId id() const { return id_; }
  const std::string& body() const { return body_; }
  const std::set<std::string>& required_placeholders() const { return placeholders_; }

  /// Substitutes every placeholder verbatim in one pass; substituted text is
  /// never rescanned. Bindings must name exactly the required placeholders.
  std::string render(const std::map<std::string, std::string>& bindings) const;

 private:
  TemplateId id_;
  std::string body_;
  std::set<std::string> placeholders_;
};

/// Immutable set of templates, one per TemplateId.
class PromptCatalog {
 public:
  /// Defaults compiled from the repository's templates/ directory.
  static const PromptCatalog& builtin();

  /// Loads `<dir>/<template_id>.txt` for every id present, falling back to
  /// the built-in default for missing files.
  static PromptCatalog load(const std::filesystem::path& dir);

  const PromptTemplate& get(TemplateId id) const;
  std::string render(TemplateId id, const std::map<std::string, std::string>& bindings) const {
    return get(id).render(bindings);
  }

 private:
  std::map<TemplateId, PromptTemplate> templates_;
};

/// CRLF/CR to LF, then drops a single trailing LF.
std::string normalize_template_text(std::string_view raw);

namespace detail {
const std::map<std::string, std::string>& builtin_template_sources();
}

}  // namespace intentest
