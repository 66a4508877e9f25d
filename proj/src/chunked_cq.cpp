#include "claro/chunked_cq.hpp"

#include <algorithm>
#include <set>

#include "claro/text_util.hpp"

namespace claro {

namespace {

void append_surface(std::string& out, std::string_view piece) {
  if (piece.empty()) return;
  const bool attach = is_punctuation(piece.substr(0, 1)) && (piece.size() == 1 || piece[1] == ' ');
  if (!out.empty() && !attach) out.push_back(' ');
  out += piece;
}

}  // namespace

std::string ChunkedCQ::surface() const {
  std::string out;
  for (const auto& p : pieces) append_surface(out, text::collapse_ws(p.surface));
  return text::normalize_spacing(out);
}

Bindings ChunkedCQ::bindings() const {
  Bindings out;
  for (const auto& p : pieces)
    if (p.is_slot()) out[p.slot()].push_back(p.surface);
  return out;
}

std::size_t ChunkedCQ::slot_occurrences() const {
  return static_cast<std::size_t>(std::count_if(pieces.begin(), pieces.end(), [](const Piece& p) { return p.is_slot(); }));
}

std::size_t ChunkedCQ::distinct_slots() const { return bindings().size(); }

Pattern pattern_of(const ChunkedCQ& c) {
  Pattern p;
  for (const auto& piece : c.pieces) {
    if (piece.is_slot()) {
      p.tokens.emplace_back(piece.slot());
    } else {
      for (auto& w : split_words(piece.surface)) p.tokens.emplace_back(std::move(w));
    }
  }
  return p;
}

std::string pattern_string(const ChunkedCQ& c) { return to_string(pattern_of(c)); }

ChunkedCQ parse_gold_chunking(std::string_view text) {
  ChunkedCQ c;
  std::string literal;
  auto flush = [&] {
    auto t = text::trim(literal);
    if (!t.empty()) c.pieces.push_back({Piece::Kind::Text, 0, std::move(t)});
    literal.clear();
  };
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '(') {
      literal.push_back(text[i++]);
      continue;
    }
    int depth = 0;
    std::size_t j = i;
    for (; j < text.size(); ++j) {
      if (text[j] == '(') ++depth;
      if (text[j] == ')' && --depth == 0) break;
    }
    if (j >= text.size()) throw GoldSyntaxError("unbalanced '(' at offset " + std::to_string(i));
    if (j + 1 < text.size() && text[j + 1] == '[') {
      const auto close = text.find(']', j + 1);
      if (close == std::string_view::npos) throw GoldSyntaxError("unterminated slot marker at offset " + std::to_string(j + 1));
      const auto marker = text.substr(j + 2, close - j - 2);
      const auto slot = parse_slot(marker);
      if (!slot) throw GoldSyntaxError("malformed slot marker [" + std::string(marker) + "]");
      const auto phrase = text::collapse_ws(text.substr(i + 1, j - i - 1));
      if (phrase.empty()) throw GoldSyntaxError("empty phrase for " + slot->str());
      flush();
      c.pieces.push_back({slot->kind == SlotKind::EC ? Piece::Kind::EC : Piece::Kind::PC, slot->index, phrase});
      i = close + 1;
      continue;
    }
    literal.append(text.substr(i, j - i + 1));
    i = j + 1;
  }
  flush();
  c.original = c.surface();
  return c;
}

std::string format_gold_chunking(const ChunkedCQ& c) {
  std::string out;
  for (const auto& p : c.pieces) {
    if (p.is_slot())
      append_surface(out, "(" + p.surface + ")[" + p.slot().str() + "]");
    else
      append_surface(out, p.surface);
  }
  return out;
}

bool has_dense_indices(const ChunkedCQ& c) {
  int next[2] = {1, 1};
  std::set<Slot> seen;
  for (const auto& p : c.pieces) {
    if (!p.is_slot()) continue;
    const auto s = p.slot();
    if (seen.count(s)) continue;
    int& expected = next[s.kind == SlotKind::EC ? 0 : 1];
    if (s.index != expected) return false;
    ++expected;
    seen.insert(s);
  }
  return true;
}

}  // namespace claro
