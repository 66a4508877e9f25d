#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "claro/authoring.hpp"
#include "claro/chunked_cq.hpp"
#include "claro/chunker.hpp"
#include "claro/matcher.hpp"
#include "claro/template_dsl.hpp"
#include "claro/template_model.hpp"

namespace claro {

enum class Validity { Valid, Imperative, AboxQuery, Explainer, Procedural, Unanswerable, ModellingDiscussion };

std::string_view to_string(Validity v);
std::optional<Validity> parse_validity(std::string_view s);

/// One CQ of an evaluation set. Invalid CQs carry no gold template.
struct EvaluationCQ {
  std::string id;
  std::string text;
  Validity validity = Validity::Valid;
  std::vector<ChunkedCQ> gold;  // alternative manual chunkings, tried in order
  std::optional<TemplateRef> gold_template;
  std::optional<std::string> rewording;
  std::vector<ChunkedCQ> rewording_gold;
  bool dematerialized = false;  // contains a "[placeholder]" meant for substitution
  std::string source;
  std::string note;
};

class FixtureError : public std::runtime_error {
 public:
  FixtureError(const std::string& what, std::size_t line) : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Blank-line separated records of `key: value` lines. Keys: id, text,
/// validity, gold (repeatable), template, reword, reword-gold (repeatable),
/// dematerialized (yes/no), source, note. Lines starting with '#' are comments.
std::vector<EvaluationCQ> parse_fixture(std::string_view contents);
std::vector<EvaluationCQ> load_fixture(const std::filesystem::path& path);
std::string format_fixture(const std::vector<EvaluationCQ>& cqs);

enum class TemplateSetName { CLaRO, Ren, Bezerra };

std::string_view to_string(TemplateSetName n);
std::optional<TemplateSetName> parse_template_set_name(std::string_view s);

/// A template set in the shared EC/PC vocabulary. Competitor sets are written
/// in their own slot vocabulary and mapped when loaded.
struct ComparisonTemplateSet {
  TemplateSetName name = TemplateSetName::CLaRO;
  TemplateSet templates;
  std::string alias_note;
};

/// Slot aliases of a competitor set: Ren (CE->EC; OP/OPE/DP->PC; I/NM/QM->EC;
/// PA->PC) and Bezerra (class->EC; property->PC). Empty for CLaRO.
DslOptions comparison_dsl_options(TemplateSetName n);
ComparisonTemplateSet load_comparison_set(TemplateSetName n, const std::filesystem::path& path);
ComparisonTemplateSet parse_comparison_set(TemplateSetName n, std::string_view contents);

enum class Outcome { Exact, Normalized, RewordedMatch, NoMatch, Invalid };

std::string_view to_string(Outcome o);

struct CQOutcome {
  std::string id;
  Outcome outcome = Outcome::NoMatch;
  std::vector<TemplateRef> matched;  // every template the winning chunking matched
  std::string pattern;               // pattern of the chunking that matched (or the first tried)
  /// The gold template is among `matched` (or absent and nothing matched).
  bool agrees_with_gold = true;

  bool matched_any() const { return outcome == Outcome::Exact || outcome == Outcome::Normalized ||
                                    outcome == Outcome::RewordedMatch; }
};

struct CoverageReport {
  std::string set_name;
  std::size_t total = 0;
  std::size_t valid = 0;
  std::size_t matched = 0;
  std::vector<CQOutcome> outcomes;  // corpus order

  /// 100 * matched / valid, rounded to one decimal.
  double percent() const;
  /// Integer-rounded percent, as reported in coverage tables.
  int percent_rounded() const;
};

struct EvaluateOptions {
  bool use_gold = true;
  bool allow_rewording = true;
  bool allow_normalized = true;
  ChunkerConfig chunker;
};

/// Coverage of `s` over `corpus`. Parallel over CQs; throws std::invalid_argument
/// on an empty corpus.
CoverageReport evaluate(const std::vector<EvaluationCQ>& corpus, const ComparisonTemplateSet& s,
                        const EvaluateOptions& options = {});
/// Single-threaded reference implementation.
CoverageReport evaluate_serial(const std::vector<EvaluationCQ>& corpus, const ComparisonTemplateSet& s,
                               const EvaluateOptions& options = {});

/// Table-1 shaped comparison: rows are template sets, columns the named
/// corpora followed by "Combined".
struct ComparisonTable {
  std::vector<std::string> columns;
  std::vector<std::size_t> totals;
  std::vector<std::size_t> valid;
  struct Row {
    TemplateSetName set;
    std::vector<std::size_t> matched;
    std::vector<int> percent;
  };
  std::vector<Row> rows;
  std::map<std::string, std::map<TemplateSetName, CoverageReport>> reports;

  const Row& row(TemplateSetName n) const;
  /// Columns in which some competitor matches more CQs than CLaRO.
  std::vector<std::string> dominance_violations() const;
};

ComparisonTable compare(const std::vector<std::pair<std::string, std::vector<EvaluationCQ>>>& corpora,
                        const std::vector<ComparisonTemplateSet>& sets, const EvaluateOptions& options = {});

std::string format_table(const ComparisonTable& t);
std::string format_table_csv(const ComparisonTable& t);

struct MiningInput {
  ChunkedCQ chunking;
  bool dematerialized = false;
};

/// Pattern strings kept when they occur at least twice, or when one of their
/// CQs is dematerialized. Deduplicated, in order of first occurrence.
std::vector<std::string> mine_patterns(const std::vector<MiningInput>& corpus);
/// Mining input from fixture records (first gold chunking of each record).
std::vector<MiningInput> mining_input(const std::vector<EvaluationCQ>& cqs);

struct ValidityGuess {
  Validity validity = Validity::Valid;
  double confidence = 0.0;
  std::vector<LintKind> evidence;
};

/// Heuristic label from the lint rules; advisory only.
ValidityGuess classify_validity(std::string_view text);

}  // namespace claro
