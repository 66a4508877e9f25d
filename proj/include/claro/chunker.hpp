#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "claro/chunked_cq.hpp"

namespace claro {

enum class CoarseTag { NounIsh, VerbIsh, Auxiliary, Determiner, Preposition, WhWord, Punctuation, Other };

/// Finer lexical class used by the chunking rules; `coarse` is derived from it.
enum class WordClass {
  Wh,
  Det,          // the, a, an, this, these, those
  Quant,        // any, some, no, all, ...
  Poss,         // its, their, my, ...
  PronText,     // I, we, you: stay literal
  PronEntity,   // it, they, them: entity chunks
  Aux,          // do, does, can, will, ...
  Copula,       // is, are, be, ...
  Have,         // have, has, had
  Neg,          // not
  Prep,
  Conj,
  Rel,          // that
  Adv,
  Noun,
  Adj,
  Verb,
  Num,
  Placeholder,  // [task x]
  Punct,
  Other,
};

struct Token {
  std::string text;
  CoarseTag tag = CoarseTag::Other;
  WordClass cls = WordClass::Other;
  std::size_t begin = 0;  // byte offsets into the input
  std::size_t end = 0;
};

enum class AuxPolicy { KeepAsText, EmitBothCandidates };

struct ChunkerConfig {
  /// Nouns that name the kind of element rather than an entity, when followed by "of".
  std::set<std::string> kind_indicators{"type", "types", "kind", "kinds", "category", "categories", "set", "sets"};
  /// Of the kind indicators, those that also yield a reading where they are an entity.
  std::set<std::string> ambiguous_indicators{"set", "sets"};
  /// Copular and possessive verbs kept as text in the default reading.
  std::set<std::string> text_verbs{"is", "are", "am", "was", "were", "be", "been", "being", "have", "has", "had"};
  AuxPolicy aux_policy = AuxPolicy::EmitBothCandidates;
};

std::string_view to_string(CoarseTag t);
std::string_view to_string(WordClass c);

/// Splits into words and punctuation; "[...]" placeholders are single tokens.
/// Tags are filled in by a left-to-right contextual tagger.
std::vector<Token> tokenize(std::string_view text);

/// Chunks a tokenized CQ. Tokens may carry externally supplied classes, which are
/// used as-is. Candidates violating the structural bounds are discarded.
std::vector<ChunkedCQ> chunk_tokens(const std::vector<Token>& tokens, std::string_view original,
                                    const ChunkerConfig& config = {});

/// tokenize + chunk_tokens. Ranked: fewer variables first, then fewer slot
/// occurrences, then the default (auxiliary-as-text) reading.
std::vector<ChunkedCQ> chunk(std::string_view text, const ChunkerConfig& config = {});

/// Reconstruction check: pieces cover the input modulo whitespace.
bool reconstructs(const ChunkedCQ& c, std::string_view text);

/// True iff the chunking stays within the template bounds.
bool within_bounds(const ChunkedCQ& c);

}  // namespace claro
