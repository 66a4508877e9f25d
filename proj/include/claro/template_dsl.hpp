#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "claro/template_model.hpp"

namespace claro {

/// A template line failed to parse. `column` is a 0-based offset into the line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Every error found while loading a template file.
class TemplateFileError : public std::runtime_error {
 public:
  explicit TemplateFileError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

struct TemplateSourceLine {
  std::string raw;
  std::size_t line_number = 1;
};

/// Options for reading template lists that do not use the EC/PC vocabulary
/// (comparison sets). Marker names are looked up in `aliases` (e.g. "CE" -> EC);
/// numbering is reassigned densely by first appearance.
struct DslOptions {
  bool lenient = false;
  std::map<std::string, SlotKind> aliases;
};

Template parse_template_line(const TemplateSourceLine& line, const DslOptions& options = {});
TemplateSet parse_template_file(std::string_view contents, const DslOptions& options = {});
TemplateSet load_template_file(const std::filesystem::path& path, const DslOptions& options = {});

std::string serialize_template(const Template& t);

/// Text with slots rendered as bare ECn/PCn tokens: "What EC1 PC1 EC2?".
std::string template_pattern(const Template& t);

std::string read_file(const std::filesystem::path& path);

}  // namespace claro
