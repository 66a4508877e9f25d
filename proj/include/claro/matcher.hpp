#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "claro/chunked_cq.hpp"
#include "claro/chunker.hpp"
#include "claro/normalize.hpp"
#include "claro/template_model.hpp"

namespace claro {

enum class Exactness { Exact, Normalized };

std::string_view to_string(Exactness e);

struct MatchResult {
  TemplateRef ref;
  Bindings bindings;
  std::vector<RuleKind> applied;
  Exactness exactness = Exactness::Exact;
  int candidate_rank = 1;  // rank of the chunking that produced this match
  std::string pattern;     // pattern string of the chunking

  bool operator==(const MatchResult&) const = default;
};

/// Precomputed exact and normalized keys for every template in a set.
/// Holds a reference to the set, which must outlive the index.
class TemplateIndex {
 public:
  explicit TemplateIndex(const TemplateSet& set, const std::vector<NormalizationRule>& rules = default_rules());

  const TemplateSet& set() const { return *set_; }
  const std::vector<NormalizationRule>& rules() const { return rules_; }

  struct Entry {
    const Template* tmpl;
    std::string exact_key;
    std::string normalized_key;
    std::vector<RuleKind> applied;
  };
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  const TemplateSet* set_;
  std::vector<NormalizationRule> rules_;
  std::vector<Entry> entries_;
};

/// Exact matches first (in set order), then normalized matches when allowed.
std::vector<MatchResult> match(const ChunkedCQ& c, const TemplateIndex& index, bool allow_normalized = true);

/// Convenience overload building a temporary index.
std::vector<MatchResult> match(const ChunkedCQ& c, const TemplateSet& set, bool allow_normalized = true);

/// Union of match() over all chunking candidates, deduplicated by (template,
/// bindings); earlier candidates win ties.
std::vector<MatchResult> match_text(std::string_view text, const TemplateIndex& index,
                                    const ChunkerConfig& config = {}, bool allow_normalized = true);

/// Groups patterns by normalized form. Each group becomes a base template
/// (the normalized pattern); distinct originals that differ from it become
/// variants a, b, ... Numbering follows first occurrence.
TemplateSet derive_default_templates(const std::vector<Pattern>& patterns,
                                     const std::vector<NormalizationRule>& rules = default_rules());

struct FragmentPair {
  TemplateRef fragment;
  TemplateRef container;
  bool operator==(const FragmentPair&) const = default;
};

/// A is a fragment of B when A's tokens without the final "?" are a proper
/// prefix of B's tokens (text compared case-insensitively). Pairs are ordered
/// by (fragment, container). Parallel over fragments.
std::vector<FragmentPair> fragment_analysis(const TemplateSet& set);
/// Single-threaded reference implementation.
std::vector<FragmentPair> fragment_analysis_serial(const TemplateSet& set);

/// Distinct fragment templates in a pair list.
std::vector<TemplateRef> distinct_fragments(const std::vector<FragmentPair>& pairs);

}  // namespace claro
