#include "claro/authoring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "claro/chunker.hpp"
#include "claro/text_util.hpp"

namespace claro {

std::string render_user_friendly(const Template& t) {
  std::string out;
  for (const auto& seg : t.segments) {
    if (const auto* text = std::get_if<TextSegment>(&seg))
      out += text->content;
    else
      out += std::get<Slot>(seg).kind == SlotKind::EC ? "[noun phrase]" : "[verb phrase]";
  }
  return out;
}

std::string_view to_string(SuggestMode m) { return m == SuggestMode::StartsWith ? "starts-with" : "contains"; }

std::optional<SuggestMode> parse_suggest_mode(std::string_view s) {
  const auto l = text::lower(s);
  if (l == "starts-with" || l == "starts_with" || l == "startswith" || l == "prefix") return SuggestMode::StartsWith;
  if (l == "contains") return SuggestMode::Contains;
  return std::nullopt;
}

std::vector<Suggestion> suggest(std::string_view input, SuggestMode mode, const TemplateSet& set) {
  const auto needle = text::lower(input);
  std::vector<Suggestion> prefix, inner;
  for (const auto& t : set.templates) {
    auto display = render_user_friendly(t);
    const auto hay = text::lower(display);
    if (hay.starts_with(needle))
      prefix.push_back({t.ref, std::move(display), SuggestMode::StartsWith});
    else if (mode == SuggestMode::Contains && hay.find(needle) != std::string::npos)
      inner.push_back({t.ref, std::move(display), SuggestMode::Contains});
  }
  auto by_ref = [](const Suggestion& a, const Suggestion& b) { return a.ref < b.ref; };
  std::sort(prefix.begin(), prefix.end(), by_ref);
  std::sort(inner.begin(), inner.end(), by_ref);
  prefix.insert(prefix.end(), inner.begin(), inner.end());
  return prefix;
}

ChunkedCQ instantiate_chunked(const Template& t, const Bindings& bindings) {
  std::map<Slot, int> occurrences;
  for (const auto& s : t.slot_occurrences()) ++occurrences[s];
  for (const auto& [slot, parts] : bindings)
    if (!occurrences.count(slot)) throw InstantiationError("unexpected binding " + slot.str());
  for (const auto& [slot, count] : occurrences) {
    auto it = bindings.find(slot);
    if (it == bindings.end() || it->second.empty()) throw InstantiationError("unbound slot " + slot.str());
    for (const auto& part : it->second)
      if (text::trim(part).empty()) throw InstantiationError("empty phrase for slot " + slot.str());
    const auto given = static_cast<int>(it->second.size());
    const bool ok = slot.kind == SlotKind::EC ? given == 1 || given == count : given == count || (count == 1 && given == 1);
    if (!ok)
      throw InstantiationError("slot " + slot.str() + " occurs " + std::to_string(count) + " times but " +
                               std::to_string(given) + " phrases were bound");
  }

  ChunkedCQ c;
  std::map<Slot, int> used;
  for (const auto& seg : t.segments) {
    if (const auto* text = std::get_if<TextSegment>(&seg)) {
      const auto trimmed = text::trim(text->content);
      if (!trimmed.empty()) c.pieces.push_back({Piece::Kind::Text, 0, trimmed});
      continue;
    }
    const auto slot = std::get<Slot>(seg);
    const auto& parts = bindings.at(slot);
    const int k = used[slot]++;
    const auto& phrase = parts.size() == 1 ? parts.front() : parts[static_cast<std::size_t>(k)];
    c.pieces.push_back({slot.kind == SlotKind::EC ? Piece::Kind::EC : Piece::Kind::PC, slot.index, text::collapse_ws(phrase)});
  }
  // a sentence-initial slot is capitalised like any other first word
  if (!c.pieces.empty() && c.pieces.front().is_slot())
    c.pieces.front().surface = text::capitalize_first(c.pieces.front().surface);
  c.original = c.surface();
  return c;
}

std::string instantiate(const Template& t, const Bindings& bindings) { return instantiate_chunked(t, bindings).surface(); }

std::string_view to_string(LintKind k) {
  switch (k) {
    case LintKind::Imperative: return "imperative";
    case LintKind::NonQuestion: return "non-question";
    case LintKind::ExplainerQuestion: return "explainer-question";
    case LintKind::ProceduralQuestion: return "procedural-question";
    case LintKind::MultiQuestion: return "multi-question";
    case LintKind::WhichWhatAdvice: return "which-what-advice";
    case LintKind::InstanceLevelSuspect: return "instance-level-suspect";
  }
  return "non-question";
}

namespace {

const std::set<std::string, std::less<>>& imperative_verbs() {
  static const std::set<std::string, std::less<>> s = {"find", "list", "show", "give", "get", "return", "retrieve",
                                                       "display", "enumerate", "tell", "provide", "select",
                                                       "count", "name", "identify", "describe", "search"};
  return s;
}

bool is_wh(const Token& t) { return t.cls == WordClass::Wh; }

bool is_acronym(std::string_view w) {
  int upper = 0;
  for (char c : w) {
    if (std::isupper(static_cast<unsigned char>(c))) ++upper;
    else if (std::isalpha(static_cast<unsigned char>(c))) return false;
  }
  return upper >= 2;
}

std::string strip_terminal(std::string_view s) {
  auto t = text::trim(s);
  while (!t.empty() && (t.back() == '.' || t.back() == '?' || t.back() == '!')) t.pop_back();
  return text::trim(t);
}

// "Find all vegetarian pizzas." -> "Which pizzas are vegetarian pizzas?"
// "Find all pizzas that have prawns but not anchovy." -> "Which pizzas have prawns but not anchovy?"
std::string imperative_rewrite(const std::vector<Token>& tokens, std::string_view text) {
  std::size_t k = 1;
  auto low = [&](std::size_t i) { return i < tokens.size() ? text::lower(tokens[i].text) : std::string(); };
  if (low(k) == "me" || low(k) == "us") ++k;
  if (low(k) == "all" || low(k) == "the" || low(k) == "every" || low(k) == "any") ++k;
  std::size_t rel = k;
  while (rel < tokens.size() && tokens[rel].cls != WordClass::Rel && low(rel) != "which" && low(rel) != "who" &&
         tokens[rel].cls != WordClass::Punct)
    ++rel;
  if (k >= tokens.size() || rel == k) return "Which " + strip_terminal(text.substr(tokens[std::min(k, tokens.size() - 1)].begin)) + "?";
  const auto np = text::collapse_ws(text.substr(tokens[k].begin, tokens[rel - 1].end - tokens[k].begin));
  if (rel < tokens.size() && tokens[rel].cls != WordClass::Punct) {
    const auto rest = strip_terminal(text.substr(tokens[rel].end));
    return "Which " + np + " " + rest + "?";
  }
  const auto& head = tokens[rel - 1].text;
  if (rel - 1 == k) return "Which " + np + " are there?";
  return "Which " + head + " are " + np + "?";
}

}  // namespace

std::vector<std::string> split_questions(std::string_view text) {
  const auto tokens = tokenize(text);
  std::vector<std::size_t> cuts;  // token index where a new question starts
  auto has_verb = [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const auto c = tokens[i].cls;
      if (c == WordClass::Verb || c == WordClass::Copula || c == WordClass::Aux || c == WordClass::Have) return true;
    }
    return false;
  };
  if (tokens.empty() || !is_wh(tokens.front())) return {text::trim(text)};
  std::vector<std::pair<std::size_t, std::size_t>> joins;  // (join start, next wh)
  for (std::size_t i = 1; i + 1 < tokens.size(); ++i) {
    const auto l = text::lower(tokens[i].text);
    if (l != "," && l != "and") continue;
    std::size_t j = i + 1;
    if (l == "," && j < tokens.size() && text::lower(tokens[j].text) == "and") ++j;
    if (j < tokens.size() && is_wh(tokens[j])) {
      joins.emplace_back(i, j);
      i = j;
    }
  }
  std::vector<std::string> out;
  std::size_t start = 0;
  for (const auto& [join, next] : joins) {
    if (!has_verb(start, join) || !has_verb(next, tokens.size())) continue;
    out.push_back(std::string(text.substr(tokens[start].begin, tokens[join - 1].end - tokens[start].begin)));
    start = next;
  }
  if (out.empty()) return {text::trim(text)};
  out.push_back(std::string(text.substr(tokens[start].begin, tokens.back().end - tokens[start].begin)));
  for (auto& q : out) q = text::capitalize_first(strip_terminal(q)) + "?";
  return out;
}

std::vector<LintFinding> lint(std::string_view text) {
  std::vector<LintFinding> out;
  const auto tokens = tokenize(text);
  if (tokens.empty()) return out;
  const auto trimmed = text::trim(text);
  const bool question = !trimmed.empty() && trimmed.back() == '?';
  const auto first = text::lower(tokens[0].text);
  const auto& t0 = tokens[0];

  const bool leading_verb = t0.cls == WordClass::Verb || imperative_verbs().count(first) > 0;
  if (leading_verb && (!question || imperative_verbs().count(first))) {
    out.push_back({LintKind::Imperative, t0.begin, t0.end,
                   "imperative; competency questions are phrased as questions",
                   imperative_rewrite(tokens, text), {}});
  } else if (!question) {
    out.push_back({LintKind::NonQuestion, 0, text.size(), "missing terminal question mark",
                   strip_terminal(text) + "?", {}});
  }

  if (first == "why")
    out.push_back({LintKind::ExplainerQuestion, t0.begin, t0.end,
                   "asks for an explanation, which an ontology does not represent", std::nullopt, {}});
  if (first == "how" && tokens.size() > 1 && text::lower(tokens[1].text) == "to")
    out.push_back({LintKind::ProceduralQuestion, t0.begin, tokens[1].end,
                   "asks for procedural information rather than declarative knowledge", std::nullopt, {}});

  if (auto parts = split_questions(text); parts.size() > 1)
    out.push_back({LintKind::MultiQuestion, 0, text.size(),
                   "joins " + std::to_string(parts.size()) + " questions; ask them separately", std::nullopt,
                   std::move(parts)});

  if (first == "which" && tokens.size() > 1) {
    const auto second = text::lower(tokens[1].text);
    if (second == "is" || second == "are")
      out.push_back({LintKind::WhichWhatAdvice, t0.begin, t0.end,
                     "'which' selects among a limited set of options; 'what' may fit better",
                     "What" + std::string(text.substr(t0.end)), {}});
  }

  for (std::size_t i = 1; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if (t.cls == WordClass::Placeholder || t.text.empty()) continue;
    if (!std::isupper(static_cast<unsigned char>(t.text[0])) || t.text == "I" || is_acronym(t.text)) continue;
    if (tokens[i - 1].cls == WordClass::Punct && tokens[i - 1].text != ",") continue;  // sentence start
    out.push_back({LintKind::InstanceLevelSuspect, t.begin, t.end,
                   "'" + t.text + "' looks like a named individual; competency questions usually ask about types",
                   std::nullopt, {}});
  }
  return out;
}

}  // namespace claro
