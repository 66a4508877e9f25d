#include "claro/normalize.hpp"

#include <algorithm>
#include <cctype>

#include "claro/text_util.hpp"

namespace claro {

std::string_view to_string(RuleKind k) {
  switch (k) {
    case RuleKind::PluralToSingular: return "plural-to-singular";
    case RuleKind::DropPersonalPronoun: return "drop-personal-pronoun";
    case RuleKind::DropRedundantWord: return "drop-redundant-word";
    case RuleKind::SynonymCanonicalize: return "synonym-canonicalize";
  }
  return "synonym-canonicalize";
}

namespace {

NormalizationRule rule(RuleKind kind, std::string_view lhs, std::string_view rhs, bool anchored = false) {
  auto words = [](std::string_view s) {
    std::vector<std::string> out;
    for (auto& w : text::split(s, ' '))
      if (!w.empty()) out.push_back(w);
    return out;
  };
  return {kind, words(lhs), words(rhs), anchored};
}

bool token_matches(const Pattern::Token& tok, const std::string& want, std::vector<Slot>& captures) {
  if (want == "EC*" || want == "PC*") {
    const auto* slot = std::get_if<Slot>(&tok);
    if (slot == nullptr || slot->kind != (want[0] == 'E' ? SlotKind::EC : SlotKind::PC)) return false;
    captures.push_back(*slot);
    return true;
  }
  const auto* word = std::get_if<std::string>(&tok);
  return word != nullptr && text::iequals(*word, want);
}

// Rewrites the first match of `r` in `tokens`. Returns true if it fired.
bool apply_once(const NormalizationRule& r, std::vector<Pattern::Token>& tokens) {
  const std::size_t n = r.lhs.size();
  if (n == 0 || tokens.size() < n) return false;
  const std::size_t last_start = r.anchored ? 0 : tokens.size() - n;
  for (std::size_t start = 0; start <= last_start; ++start) {
    std::vector<Slot> captures;
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) ok = token_matches(tokens[start + k], r.lhs[k], captures);
    if (!ok) continue;
    std::vector<Pattern::Token> replacement;
    std::size_t next_capture = 0;
    for (const auto& w : r.rhs) {
      if ((w == "EC*" || w == "PC*") && next_capture < captures.size())
        replacement.emplace_back(captures[next_capture++]);
      else
        replacement.emplace_back(w);
    }
    tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(start),
                 tokens.begin() + static_cast<std::ptrdiff_t>(start + n));
    tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(start), replacement.begin(), replacement.end());
    return true;
  }
  return false;
}

bool is_subject_pronoun(const Pattern::Token& tok) {
  const auto* w = std::get_if<std::string>(&tok);
  return w != nullptr && (text::iequals(*w, "I") || text::iequals(*w, "we"));
}

// "PCi I PCi" -> "PCi": the pronoun and the second occurrence of the PC go.
bool drop_pronoun(std::vector<Pattern::Token>& tokens) {
  for (std::size_t i = 0; i + 2 < tokens.size(); ++i) {
    const auto* a = std::get_if<Slot>(&tokens[i]);
    const auto* b = std::get_if<Slot>(&tokens[i + 2]);
    if (a && b && *a == *b && a->kind == SlotKind::PC && is_subject_pronoun(tokens[i + 1])) {
      tokens.erase(tokens.begin() + static_cast<std::ptrdiff_t>(i + 1),
                   tokens.begin() + static_cast<std::ptrdiff_t>(i + 3));
      return true;
    }
  }
  return false;
}

bool starts_capitalized(const std::vector<Pattern::Token>& tokens) {
  if (tokens.empty()) return false;
  const auto* w = std::get_if<std::string>(&tokens.front());
  return w != nullptr && !w->empty() && std::isupper(static_cast<unsigned char>((*w)[0]));
}

}  // namespace

const std::vector<NormalizationRule>& default_rules() {
  using K = RuleKind;
  static const std::vector<NormalizationRule> rules = {
      // Closed plural forms that have a singular counterpart in the template list.
      rule(K::PluralToSingular, "are there", "is there", true),
      rule(K::PluralToSingular, "what are EC* for", "what is EC* for", true),
      rule(K::PluralToSingular, "what are EC* of", "what is EC* of", true),
      rule(K::PluralToSingular, "who are EC* of", "who is EC* of", true),
      rule(K::PluralToSingular, "which EC* are EC*", "which EC* is EC*", true),
      rule(K::PluralToSingular, "types of EC* are EC*", "type of EC* is EC*"),
      // Words that add nothing to the question's content.
      rule(K::DropRedundantWord, "any", ""),
      rule(K::DropRedundantWord, "possible", ""),
      rule(K::DropRedundantWord, "or not", ""),
      rule(K::DropRedundantWord, "else", ""),
      rule(K::DropRedundantWord, "to what extent", "", true),
      rule(K::DropRedundantWord, "how and", "", true),
      rule(K::DropRedundantWord, "in the past", ""),
      // "type" is preferred over "kind" and "category".
      rule(K::SynonymCanonicalize, "kind of", "type of"),
      rule(K::SynonymCanonicalize, "kinds of", "types of"),
      rule(K::SynonymCanonicalize, "category", "type"),
      rule(K::SynonymCanonicalize, "categories", "types"),
      rule(K::SynonymCanonicalize, "where's", "where is"),
  };
  return rules;
}

NormalizedPattern normalize(const Pattern& p, const std::vector<NormalizationRule>& rules) {
  NormalizedPattern out{p, {}};
  auto& tokens = out.pattern.tokens;
  const bool capitalized = starts_capitalized(tokens);
  bool fired[4] = {false, false, false, false};

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : rules) {
      if (r.kind == RuleKind::DropPersonalPronoun) continue;
      while (apply_once(r, tokens)) {
        fired[static_cast<int>(r.kind)] = changed = true;
        if (r.anchored) break;
      }
    }
    while (drop_pronoun(tokens)) fired[static_cast<int>(RuleKind::DropPersonalPronoun)] = changed = true;
  }

  if (capitalized && !tokens.empty())
    if (auto* w = std::get_if<std::string>(&tokens.front())) *w = text::capitalize_first(*w);
  for (int k = 0; k < 4; ++k)
    if (fired[k]) out.applied.push_back(static_cast<RuleKind>(k));
  return out;
}

std::string normalize_pattern(std::string_view pattern, const std::vector<NormalizationRule>& rules) {
  return to_string(normalize(parse_pattern(pattern), rules).pattern);
}

}  // namespace claro
