#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "claro/pattern.hpp"

namespace claro {

enum class RuleKind { PluralToSingular, DropPersonalPronoun, DropRedundantWord, SynonymCanonicalize };

std::string_view to_string(RuleKind k);

/// A surface rewrite over a pattern's token sequence. `lhs` holds lowercase
/// words or the wildcards "EC*"/"PC*" (any slot of that kind); wildcards in
/// `rhs` are filled with the slots captured by `lhs`, in order. Anchored rules
/// only fire at the start of the pattern.
struct NormalizationRule {
  RuleKind kind;
  std::vector<std::string> lhs;
  std::vector<std::string> rhs;
  bool anchored = false;
};

/// The default rule list, grouped by kind in this order: plural-to-singular,
/// drop-personal-pronoun, drop-redundant-word, synonym-canonicalize.
const std::vector<NormalizationRule>& default_rules();

struct NormalizedPattern {
  Pattern pattern;
  std::vector<RuleKind> applied;  // distinct kinds, in rule-list order
};

/// Applies each rule once, left to right, and repeats the pass until nothing
/// changes, so the result is a fixpoint. The pronoun rule "PCi I PCi" -> "PCi"
/// is built in (any subject pronoun in I/we between two occurrences of the same PC).
NormalizedPattern normalize(const Pattern& p, const std::vector<NormalizationRule>& rules = default_rules());

/// String form; throws PatternError on malformed input.
std::string normalize_pattern(std::string_view pattern,
                              const std::vector<NormalizationRule>& rules = default_rules());

}  // namespace claro
