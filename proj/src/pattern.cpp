#include "claro/pattern.hpp"

#include <cctype>

#include "claro/text_util.hpp"

namespace claro {

std::size_t Pattern::slot_count() const {
  std::size_t n = 0;
  for (const auto& t : tokens) n += std::holds_alternative<Slot>(t) ? 1 : 0;
  return n;
}

bool is_punctuation(std::string_view token) {
  return token.size() == 1 && std::string_view("?,.;:!").find(token[0]) != std::string_view::npos;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view word = text.substr(i, j - i);
    std::vector<std::string> trailing;
    while (!word.empty() && is_punctuation(word.substr(word.size() - 1))) {
      trailing.emplace_back(word.substr(word.size() - 1));
      word.remove_suffix(1);
    }
    while (!word.empty() && is_punctuation(word.substr(0, 1))) {
      out.emplace_back(word.substr(0, 1));
      word.remove_prefix(1);
    }
    if (!word.empty()) out.emplace_back(word);
    out.insert(out.end(), trailing.rbegin(), trailing.rend());
    i = j;
  }
  return out;
}

Pattern parse_pattern(std::string_view text) {
  Pattern p;
  for (auto& word : split_words(text)) {
    std::string_view w = word;
    const bool bracketed = w.size() > 2 && w.front() == '[' && w.back() == ']';
    if (bracketed) w = w.substr(1, w.size() - 2);
    if (auto slot = parse_slot(w)) {
      p.tokens.emplace_back(*slot);
      continue;
    }
    const bool slot_like = (w.starts_with("EC") || w.starts_with("PC")) && w.size() > 2 &&
                           std::isdigit(static_cast<unsigned char>(w[2]));
    if (slot_like) throw PatternError("malformed slot token '" + word + "'");
    if (bracketed || w.find('[') != std::string_view::npos || w.find(']') != std::string_view::npos)
      throw PatternError("unexpected bracket in pattern token '" + word + "'");
    p.tokens.emplace_back(std::move(word));
  }
  if (p.tokens.empty()) throw PatternError("empty pattern");
  return p;
}

Pattern pattern_of(const Template& t) {
  Pattern p;
  for (const auto& seg : t.segments) {
    if (const auto* text = std::get_if<TextSegment>(&seg)) {
      for (auto& w : split_words(text->content)) p.tokens.emplace_back(std::move(w));
    } else {
      p.tokens.emplace_back(std::get<Slot>(seg));
    }
  }
  return p;
}

namespace {

std::string render(const Pattern& p, bool fold) {
  std::string out;
  for (const auto& tok : p.tokens) {
    std::string piece;
    if (const auto* w = std::get_if<std::string>(&tok)) {
      piece = fold ? text::lower(*w) : *w;
      if (is_punctuation(piece) && !out.empty()) {
        out += piece;
        continue;
      }
    } else {
      piece = std::get<Slot>(tok).str();
    }
    if (!out.empty()) out.push_back(' ');
    out += piece;
  }
  return out;
}

}  // namespace

std::string to_string(const Pattern& p) { return render(p, false); }

std::string pattern_key(const Pattern& p) { return render(p, true); }

std::vector<Segment> segments_of(const Pattern& p) {
  std::vector<Segment> segs;
  auto append_text = [&](const std::string& s) {
    if (!segs.empty())
      if (auto* prev = std::get_if<TextSegment>(&segs.back())) {
        prev->content += s;
        return;
      }
    segs.push_back(TextSegment{s});
  };
  for (std::size_t i = 0; i < p.tokens.size(); ++i) {
    const auto& tok = p.tokens[i];
    const bool punct = std::holds_alternative<std::string>(tok) && is_punctuation(std::get<std::string>(tok));
    if (i > 0 && !punct) append_text(" ");
    if (const auto* w = std::get_if<std::string>(&tok))
      append_text(*w);
    else
      segs.push_back(std::get<Slot>(tok));
  }
  return segs;
}

}  // namespace claro
