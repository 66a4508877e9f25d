#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "claro/chunked_cq.hpp"
#include "claro/template_model.hpp"

namespace claro {

/// One "instantiates" link: the template a question was authored from and
/// the phrases bound to its slots (split PCs keep one phrase per part).
struct Instantiation {
  TemplateRef ref;
  Bindings bindings;
  bool operator==(const Instantiation&) const = default;
};

struct CompetencyQuestion {
  std::string text;
  std::vector<Instantiation> instantiates;  // may be empty: free-form question
  std::vector<std::string> for_ontologies;  // may be empty: no ontology yet
  std::optional<std::string> created;       // ISO-8601 UTC
  std::optional<std::string> modified;
  bool operator==(const CompetencyQuestion&) const = default;
};

struct CQDocument {
  std::string title;
  std::string template_set_name;
  std::string template_set_version;
  std::vector<CompetencyQuestion> questions;
  bool operator==(const CQDocument&) const = default;
};

/// Malformed XML or a schema violation; `path` locates the element
/// (e.g. "/cqDocument/cq[2]/instantiation[1]").
class StorageError : public std::runtime_error {
 public:
  StorageError(const std::string& message, std::string path = {})
      : std::runtime_error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct LoadWarning {
  std::string path;
  std::string message;
  bool operator==(const LoadWarning&) const = default;
};

struct LoadResult {
  CQDocument document;
  std::vector<LoadWarning> warnings;
};

/// Deterministic, two-space indented XML. Throws StorageError for an empty
/// title, malformed timestamps or characters XML cannot carry.
std::string save_document(const CQDocument& doc);

/// Parses and validates. With a template set, unknown template references and
/// instantiations that do not reproduce the question text become warnings.
LoadResult load_document(std::string_view xml, const TemplateSet* templates = nullptr);

void save_document_file(const std::filesystem::path& path, const CQDocument& doc);
LoadResult load_document_file(const std::filesystem::path& path, const TemplateSet* templates = nullptr);

/// Checks every instantiation against the set (template exists, bindings fit,
/// instantiated text equals the question text modulo whitespace).
std::vector<LoadWarning> check_instantiations(const CQDocument& doc, const TemplateSet& templates);

/// YYYY-MM-DDTHH:MM:SS[.fff]Z
bool is_iso8601_utc(std::string_view s);
std::string now_iso8601_utc();

}  // namespace claro
