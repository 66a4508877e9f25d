#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "claro/chunked_cq.hpp"
#include "claro/template_model.hpp"

namespace claro {

/// Slots rendered as "[noun phrase]" (EC) and "[verb phrase]" (PC).
std::string render_user_friendly(const Template& t);

enum class SuggestMode { StartsWith, Contains };

std::string_view to_string(SuggestMode m);
/// Accepts "starts-with"/"starts_with"/"contains".
std::optional<SuggestMode> parse_suggest_mode(std::string_view s);

struct Suggestion {
  TemplateRef ref;
  std::string display;
  SuggestMode hit = SuggestMode::StartsWith;
  bool operator==(const Suggestion&) const = default;
};

/// Case-insensitive comparison against the user-friendly display. In contains
/// mode, prefix hits come first, then other substring hits; (id, variant)
/// order within each tier. Empty input returns every template.
std::vector<Suggestion> suggest(std::string_view input, SuggestMode mode, const TemplateSet& set);

class InstantiationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fills a template's slots. An EC bound to one phrase fills every occurrence;
/// a PC occurring k times needs k parts (or one part when k == 1).
/// Throws InstantiationError naming the offending slot.
std::string instantiate(const Template& t, const Bindings& bindings);

/// The gold chunking that instantiate() produced (for round-trip checks).
ChunkedCQ instantiate_chunked(const Template& t, const Bindings& bindings);

enum class LintKind {
  Imperative,
  NonQuestion,
  ExplainerQuestion,
  ProceduralQuestion,
  MultiQuestion,
  WhichWhatAdvice,
  InstanceLevelSuspect,
};

std::string_view to_string(LintKind k);

struct LintFinding {
  LintKind kind;
  std::size_t begin = 0;  // byte span in the input
  std::size_t end = 0;
  std::string message;
  std::optional<std::string> rewrite;
  std::vector<std::string> splits;  // multi-question only
};

std::vector<LintFinding> lint(std::string_view text);

/// Splits a question joining several wh-clauses ("What is X, what are Y and
/// what Z?") into separate questions. Returns the input alone when there is
/// nothing to split.
std::vector<std::string> split_questions(std::string_view text);

}  // namespace claro
