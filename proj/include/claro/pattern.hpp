#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "claro/template_model.hpp"

namespace claro {

class PatternError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pattern is a flat token sequence of literal words, punctuation and slots.
/// "Which EC1 PC1 I PC1 to PC2 EC2?" has eight tokens plus the "?".
struct Pattern {
  using Token = std::variant<std::string, Slot>;
  std::vector<Token> tokens;

  bool operator==(const Pattern&) const = default;
  std::size_t slot_count() const;
};

bool is_punctuation(std::string_view token);

/// Splits literal text into word and punctuation tokens.
std::vector<std::string> split_words(std::string_view text);

/// Accepts bare (EC1) or bracketed ([EC1]) slot tokens. Throws PatternError on
/// malformed slot tokens or empty input.
Pattern parse_pattern(std::string_view text);

Pattern pattern_of(const Template& t);

/// Single-spaced rendering with punctuation attached to the preceding token.
std::string to_string(const Pattern& p);

/// Case-folded rendering used for equality tests between patterns.
std::string pattern_key(const Pattern& p);

/// Builds template segments from a pattern (inverse of pattern_of up to spacing).
std::vector<Segment> segments_of(const Pattern& p);

}  // namespace claro
