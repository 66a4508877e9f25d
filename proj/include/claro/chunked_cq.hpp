#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "claro/pattern.hpp"
#include "claro/template_model.hpp"

namespace claro {

/// One piece of a chunked CQ: literal text, or a phrase bound to an EC/PC slot.
/// A split PC contributes one piece per part, all with the same index.
struct Piece {
  enum class Kind { Text, EC, PC };
  Kind kind = Kind::Text;
  int index = 0;  // 0 for text
  std::string surface;

  bool operator==(const Piece&) const = default;
  bool is_slot() const { return kind != Kind::Text; }
  Slot slot() const { return {kind == Kind::EC ? SlotKind::EC : SlotKind::PC, index}; }
};

using Bindings = std::map<Slot, std::vector<std::string>>;

struct ChunkedCQ {
  std::string original;
  std::vector<Piece> pieces;
  int rank = 0;
  bool aux_as_pc = false;  // produced by the emit-both policy's alternative reading

  bool operator==(const ChunkedCQ&) const = default;

  /// Surface text rebuilt from pieces (single spaces, punctuation attached).
  std::string surface() const;
  /// Slot -> phrase parts in order of appearance.
  Bindings bindings() const;
  /// Number of slot pieces (occurrences).
  std::size_t slot_occurrences() const;
  std::size_t distinct_slots() const;
};

Pattern pattern_of(const ChunkedCQ& c);

/// "What EC1 PC1 EC2?" rendering of a chunking.
std::string pattern_string(const ChunkedCQ& c);

class GoldSyntaxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses the gold chunking syntax: literal text with `(phrase)[EC1]` / `(phrase)[PC1]`
/// spans. Parentheses not followed by a slot marker stay literal.
ChunkedCQ parse_gold_chunking(std::string_view text);
std::string format_gold_chunking(const ChunkedCQ& c);

/// True iff EC and PC indices are 1..n by first appearance.
bool has_dense_indices(const ChunkedCQ& c);

}  // namespace claro
