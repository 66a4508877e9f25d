#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "claro/authoring.hpp"
#include "claro/chunked_cq.hpp"
#include "claro/evaluator.hpp"
#include "claro/matcher.hpp"
#include "claro/storage.hpp"
#include "claro/template_model.hpp"

namespace claro {

using Json = nlohmann::ordered_json;

/// A JSON payload that does not have the expected shape.
class PayloadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The one serialization used by both the CLI (--format json) and the service,
/// so that their outputs are byte-identical.
std::string dump(const Json& j);

Json to_json(const TemplateRef& r);
Json to_json(const Template& t);
Json to_json(const TemplateSet& s);
Json to_json(const Bindings& b);
Json to_json(const ChunkedCQ& c);
Json to_json(const MatchResult& m);
Json to_json(const Suggestion& s);
Json to_json(const LintFinding& f);
Json to_json(const CompetencyQuestion& q);
Json to_json(const CQDocument& d);
Json to_json(const LoadWarning& w);
Json to_json(const CoverageReport& r);
Json to_json(const ComparisonTable& t);

template <typename T>
Json to_json_array(const std::vector<T>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

/// {"EC1": "pizzas", "PC1": ["do", "eat"]}: a string is a single part.
Bindings bindings_from_json(const Json& j);
/// "81" / "70a", or {"templateId": 70, "variant": "a"}.
TemplateRef template_ref_from_json(const Json& j);
CompetencyQuestion question_from_json(const Json& j);
CQDocument document_from_json(const Json& j);

// Response bodies shared by the CLI and the service.
Json suggest_response(const TemplateSet& set, std::string_view query, SuggestMode mode);
Json chunk_response(std::string_view text, const ChunkerConfig& config = {});
/// Matches the chunker's candidates for `text`.
Json match_response(std::string_view text, const TemplateIndex& index, const ChunkerConfig& config = {});
/// Matches a single gold chunking ("Which (pizzas)[EC1] (have)[PC1] (nuts)[EC2]?").
Json match_chunking_response(const ChunkedCQ& chunking, const TemplateIndex& index);
Json lint_response(std::string_view text);
/// Throws InstantiationError when the bindings do not fit.
Json instantiate_response(const Template& t, const Bindings& bindings);

}  // namespace claro
