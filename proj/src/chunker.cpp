#include "claro/chunker.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>

#include "claro/text_util.hpp"

namespace claro {

std::string_view to_string(CoarseTag t) {
  switch (t) {
    case CoarseTag::NounIsh: return "noun-ish";
    case CoarseTag::VerbIsh: return "verb-ish";
    case CoarseTag::Auxiliary: return "auxiliary";
    case CoarseTag::Determiner: return "determiner";
    case CoarseTag::Preposition: return "preposition";
    case CoarseTag::WhWord: return "wh-word";
    case CoarseTag::Punctuation: return "punctuation";
    case CoarseTag::Other: return "other";
  }
  return "other";
}

std::string_view to_string(WordClass c) {
  switch (c) {
    case WordClass::Wh: return "wh";
    case WordClass::Det: return "det";
    case WordClass::Quant: return "quant";
    case WordClass::Poss: return "poss";
    case WordClass::PronText: return "pron";
    case WordClass::PronEntity: return "pron-entity";
    case WordClass::Aux: return "aux";
    case WordClass::Copula: return "copula";
    case WordClass::Have: return "have";
    case WordClass::Neg: return "neg";
    case WordClass::Prep: return "prep";
    case WordClass::Conj: return "conj";
    case WordClass::Rel: return "rel";
    case WordClass::Adv: return "adv";
    case WordClass::Noun: return "noun";
    case WordClass::Adj: return "adj";
    case WordClass::Verb: return "verb";
    case WordClass::Num: return "num";
    case WordClass::Placeholder: return "placeholder";
    case WordClass::Punct: return "punct";
    case WordClass::Other: return "other";
  }
  return "other";
}

namespace {

using WordSet = std::set<std::string, std::less<>>;

// ---------------------------------------------------------------------------
// Lexicon

const std::map<std::string, WordClass, std::less<>>& closed_class() {
  using W = WordClass;
  static const std::map<std::string, WordClass, std::less<>> m = [] {
    std::map<std::string, WordClass, std::less<>> out;
    auto add = [&](WordClass c, std::initializer_list<const char*> words) {
      for (const char* w : words) out.emplace(w, c);
    };
    add(W::Wh, {"what", "which", "who", "whom", "whose", "where", "when", "how", "why"});
    add(W::Det, {"the", "a", "an", "this", "these", "those"});
    add(W::Quant, {"any", "some", "no", "all", "each", "every", "many", "much", "more", "most", "several", "few",
                   "other", "another", "such", "both", "either", "neither", "enough"});
    add(W::Poss, {"its", "their", "my", "our", "your", "his", "her"});
    add(W::PronText, {"i", "we", "you", "me", "us", "he", "she", "one"});
    add(W::PronEntity, {"it", "they", "them"});
    add(W::Aux, {"do", "does", "did", "can", "could", "will", "would", "shall", "should", "may", "might", "must",
                 "don't", "doesn't", "didn't", "can't", "cannot", "won't", "wouldn't", "shouldn't", "couldn't"});
    add(W::Copula, {"is", "are", "am", "was", "were", "be", "been", "being", "isn't", "aren't", "wasn't", "weren't"});
    add(W::Have, {"have", "has", "had"});
    add(W::Neg, {"not", "never"});
    add(W::Prep, {"of", "for", "in", "on", "to", "with", "from", "by", "at", "about", "into", "between", "as",
                  "like", "regarding", "given", "within", "without", "under", "over", "across", "through",
                  "during", "per", "via", "against", "among", "towards", "toward", "onto", "upon", "than",
                  "after", "before", "concerning", "including", "except", "besides", "beyond", "inside",
                  "outside", "around", "throughout"});
    add(W::Conj, {"and", "or", "but", "nor", "if", "whether", "while", "because", "so"});
    add(W::Rel, {"that"});
    add(W::Adv, {"there", "also", "else", "only", "just", "still", "usually", "typically", "currently", "often",
                 "always", "ever", "very", "less", "least", "even", "already", "yet", "then", "now", "here",
                 "too", "generally", "normally", "actually", "really", "exactly", "mainly", "mostly"});
    return out;
  }();
  return m;
}

const WordSet& verb_stems() {
  static const WordSet s = {
      "accept", "access", "acquire", "act", "add", "affect", "allow", "analyse", "analyze", "annotate", "answer",
      "appear", "apply", "ask", "assess", "assist", "attend", "avoid", "bake", "become", "begin", "belong",
      "boil", "build", "buy", "calculate", "call", "capture", "carry", "categorise", "categorize", "cause",
      "change", "characterise", "characterize", "choose", "cite", "classify", "close", "collaborate", "collect",
      "come", "communicate", "compare", "compile", "compose", "compute", "connect", "consist", "consume",
      "contain", "continue", "contribute", "control", "convert", "cook", "cooperate", "correct", "cost",
      "cover", "create", "decode", "decrease", "define", "deliver", "depend", "derive", "describe", "detect",
      "determine", "develop", "differ", "display", "dissolve", "distribute", "download", "drink", "drive",
      "eat", "edit", "emit", "employ", "enable", "encode", "end", "enter", "estimate", "evaluate", "examine",
      "exist", "experience", "explain", "export", "extend", "feed", "find", "finish", "fly", "follow", "freeze",
      "fund", "generate", "get", "give", "go", "govern", "grow", "handle", "happen", "hate", "heat", "help",
      "hire", "hold", "host", "hunt", "identify", "implement", "import", "include", "increase", "indicate",
      "influence", "inherit", "install", "integrate", "interact", "interpret", "invest", "involve", "keep",
      "know", "lack", "last", "learn", "let", "license", "link", "live", "load", "locate", "log", "love",
      "maintain", "make", "manage", "map", "mean", "measure", "melt", "mitigate", "model", "monitor", "move",
      "name", "need", "observe", "obtain", "occur", "offer", "open", "operate", "order", "organise",
      "organize", "own", "participate", "pay", "perceive", "perform", "play", "possess", "precede", "predict",
      "prefer", "prepare", "prevent", "process", "produce", "provide", "publish", "purchase", "reach", "react",
      "read", "receive", "recommend", "record", "reduce", "refer", "regulate", "relate", "release", "remain",
      "remove", "replace", "report", "represent", "require", "respond", "return", "run", "save", "say", "see",
      "select", "sell", "send", "sense", "serve", "share", "show", "simulate", "sleep", "solve", "specify",
      "sponsor", "start", "stop", "store", "study", "suffer", "suggest", "supply", "support", "swim", "take",
      "taste", "teach", "tell", "test", "trace", "track", "transmit", "travel", "treat", "try", "undergo",
      "understand", "update", "upgrade", "use", "validate", "verify", "visit", "visualise", "visualize",
      "walk", "want", "wear", "work", "write"};
  return s;
}

const std::map<std::string, std::string, std::less<>>& irregular_past() {
  static const std::map<std::string, std::string, std::less<>> m = {
      {"known", "know"},   {"knew", "know"},     {"made", "make"},     {"given", "give"},   {"gave", "give"},
      {"done", "do"},      {"seen", "see"},      {"saw", "see"},       {"written", "write"}, {"wrote", "write"},
      {"taken", "take"},   {"took", "take"},     {"built", "build"},   {"found", "find"},   {"held", "hold"},
      {"eaten", "eat"},    {"ate", "eat"},       {"drunk", "drink"},   {"drank", "drink"},  {"grown", "grow"},
      {"grew", "grow"},    {"shown", "show"},    {"paid", "pay"},      {"sold", "sell"},    {"bought", "buy"},
      {"taught", "teach"}, {"kept", "keep"},     {"meant", "mean"},    {"sent", "send"},    {"told", "tell"},
      {"understood", "understand"}, {"worn", "wear"}, {"chosen", "choose"}, {"driven", "drive"},
      {"flown", "fly"},    {"frozen", "freeze"}, {"begun", "begin"},   {"began", "begin"},  {"became", "become"},
      {"came", "come"},    {"went", "go"},       {"gone", "go"},       {"got", "get"},      {"gotten", "get"},
      {"led", "lead"},     {"fed", "feed"},      {"undergone", "undergo"}, {"said", "say"}, {"ran", "run"}};
  return m;
}

const WordSet& adjectives() {
  static const WordSet s = {
      "wet", "dry", "hot", "cold", "warm", "big", "small", "large", "long", "short", "high", "low", "old",
      "new", "young", "good", "bad", "red", "green", "blue", "white", "black", "yellow", "organic",
      "vegetarian", "vegan", "spicy", "healthy", "free", "relevant", "available", "possible", "different",
      "similar", "same", "main", "important", "pure", "toxic", "edible", "safe", "common", "rare", "natural",
      "artificial", "fresh", "raw", "hard", "soft", "heavy", "light", "fast", "slow", "rich", "poor", "true",
      "false", "valid", "disjoint", "equal", "compatible", "suitable", "responsible", "necessary", "active",
      "public", "private", "local", "global", "national", "international", "average", "maximum", "minimum",
      "total", "current", "furry", "carnivorous", "herbivorous", "omnivorous", "descriptive", "typical",
      "specific", "general", "physical", "mental", "social", "medical", "clinical", "daily", "weekly",
      "annual", "open-source", "commercial", "free-text", "alive", "dead", "wild", "domestic", "mobile",
      "smart", "electric", "electronic", "digital", "first", "last", "next", "previous", "whole", "entire"};
  return s;
}

const WordSet& catenatives() {
  static const WordSet s = {"need", "needs", "needed", "want", "wants", "wanted", "have", "has", "had",
                            "try", "tries", "tried", "plan", "plans", "intend", "intends", "able", "going"};
  return s;
}

const WordSet& kind_modifiers() {
  static const WordSet s = {"main", "possible", "different", "various", "other", "specific"};
  return s;
}

enum class VerbForm { None, Base, ThirdPerson, Past, Ing };

const WordSet& kind_words() {
  static const WordSet s{"type", "types", "kind", "kinds", "sort", "sorts", "category", "categories"};
  return s;
}

bool has_suffix(std::string_view w, std::string_view suffix) {
  return w.size() > suffix.size() + 1 && w.ends_with(suffix);
}

bool known_stem(std::string_view stem) { return verb_stems().count(stem) > 0; }

VerbForm verb_form(std::string_view w) {
  if (known_stem(w)) return VerbForm::Base;
  if (irregular_past().count(w)) return VerbForm::Past;
  auto strip = [&](std::size_t n) { return std::string(w.substr(0, w.size() - n)); };
  if (has_suffix(w, "ies") && known_stem(strip(3) + "y")) return VerbForm::ThirdPerson;
  if (has_suffix(w, "es") && known_stem(strip(2))) return VerbForm::ThirdPerson;
  if (has_suffix(w, "s") && !w.ends_with("ss") && known_stem(strip(1))) return VerbForm::ThirdPerson;
  if (has_suffix(w, "ied") && known_stem(strip(3) + "y")) return VerbForm::Past;
  if (has_suffix(w, "ed")) {
    if (known_stem(strip(2)) || known_stem(strip(1))) return VerbForm::Past;
    const auto s = strip(2);
    if (s.size() > 2 && s[s.size() - 1] == s[s.size() - 2] && known_stem(s.substr(0, s.size() - 1)))
      return VerbForm::Past;
  }
  if (has_suffix(w, "ing")) {
    const auto s = strip(3);
    if (known_stem(s) || known_stem(s + "e")) return VerbForm::Ing;
    if (s.size() > 2 && s[s.size() - 1] == s[s.size() - 2] && known_stem(s.substr(0, s.size() - 1)))
      return VerbForm::Ing;
  }
  return VerbForm::None;
}

bool adjective_like(std::string_view w) {
  if (adjectives().count(w)) return true;
  for (std::string_view suffix : {"ous", "ful", "less", "able", "ible", "ive"})
    if (has_suffix(w, suffix) && w.size() > suffix.size() + 2) return true;
  return false;
}

CoarseTag coarse_of(WordClass c) {
  switch (c) {
    case WordClass::Noun:
    case WordClass::Adj:
    case WordClass::Num:
    case WordClass::Placeholder:
    case WordClass::PronEntity:
      return CoarseTag::NounIsh;
    case WordClass::Verb:
    case WordClass::Copula:
    case WordClass::Have:
      return CoarseTag::VerbIsh;
    case WordClass::Aux:
    case WordClass::Neg:
      return CoarseTag::Auxiliary;
    case WordClass::Det:
    case WordClass::Quant:
    case WordClass::Poss:
      return CoarseTag::Determiner;
    case WordClass::Prep:
      return CoarseTag::Preposition;
    case WordClass::Wh:
      return CoarseTag::WhWord;
    case WordClass::Punct:
      return CoarseTag::Punctuation;
    default:
      return CoarseTag::Other;
  }
}

// ---------------------------------------------------------------------------
// Tagging

struct TagContext {
  const Token* prev = nullptr;
  const Token* prev2 = nullptr;
  bool pending_aux = false;
  bool last_verbal = false;  // most recent content decision before a conjunction was a verb
  bool polar_copula = false;   // "Is X ...?": the word after the subject is its complement
  bool kind_question = false;  // "What type of X is ...?": the complement names an entity
};

WordClass classify_open(const std::string& w, const TagContext& ctx) {
  const VerbForm vf = verb_form(w);
  const WordClass prev = ctx.prev ? ctx.prev->cls : WordClass::Other;
  const bool participle = vf == VerbForm::Past || vf == VerbForm::Ing;

  if (vf == VerbForm::None) {
    if (adjective_like(w)) return WordClass::Adj;
    if (has_suffix(w, "ed") && w.size() > 4) {
      switch (prev) {
        case WordClass::Noun:
        case WordClass::Placeholder:
        case WordClass::PronEntity:
        case WordClass::Wh:
        case WordClass::Rel:
        case WordClass::Copula:
        case WordClass::Aux:
        case WordClass::Have:
        case WordClass::Neg:
          return WordClass::Verb;
        default:
          return WordClass::Adj;
      }
    }
    return WordClass::Noun;
  }

  if (!ctx.prev) return vf == VerbForm::Base ? WordClass::Verb : WordClass::Noun;
  const auto prev_lower = text::lower(ctx.prev->text);
  switch (prev) {
    case WordClass::Det:
    case WordClass::Poss:
    case WordClass::Quant:
    case WordClass::Adj:
    case WordClass::Num:
      return participle ? WordClass::Adj : WordClass::Noun;
    case WordClass::Prep:
      if (prev_lower == "to") return WordClass::Verb;
      return participle ? WordClass::Adj : WordClass::Noun;
    case WordClass::Aux:
    case WordClass::Neg:
      return WordClass::Verb;
    case WordClass::Copula:
      if (vf == VerbForm::Ing && ctx.kind_question) return WordClass::Noun;  // "is cooking": a gerund
      if (participle) return WordClass::Verb;
      return adjective_like(w) ? WordClass::Adj : WordClass::Noun;
    case WordClass::Have:
      return vf == VerbForm::Past ? WordClass::Verb : WordClass::Noun;
    case WordClass::Noun:
    case WordClass::Placeholder:
    case WordClass::PronEntity:
    case WordClass::PronText:
      if (ctx.pending_aux) return WordClass::Verb;
      if (ctx.polar_copula && !participle && prev != WordClass::PronText)
        return adjective_like(w) ? WordClass::Adj : WordClass::Noun;
      if (vf == VerbForm::Ing) return prev == WordClass::PronText ? WordClass::Verb : WordClass::Noun;
      return WordClass::Verb;
    case WordClass::Wh:
      return (vf == VerbForm::ThirdPerson || vf == VerbForm::Past) ? WordClass::Verb : WordClass::Noun;
    case WordClass::Rel:
      return WordClass::Verb;
    case WordClass::Conj:
      return ctx.last_verbal ? WordClass::Verb : WordClass::Noun;
    case WordClass::Adv:
      if (ctx.pending_aux) return WordClass::Verb;
      return (vf == VerbForm::ThirdPerson || vf == VerbForm::Past) ? WordClass::Verb : WordClass::Noun;
    default:
      return WordClass::Noun;
  }
}

void tag(std::vector<Token>& tokens, const std::vector<bool>& is_word) {
  TagContext ctx;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto& tok = tokens[i];
    if (is_word[i]) {
      const auto w = text::lower(tok.text);
      const auto prev_lower = ctx.prev ? text::lower(ctx.prev->text) : std::string();
      if (auto it = closed_class().find(w); it != closed_class().end()) {
        tok.cls = it->second;
        if (w == "given" && ctx.prev && ctx.prev->cls == WordClass::Copula) tok.cls = WordClass::Verb;
        if (w == "like" && ctx.prev && (ctx.prev->cls == WordClass::PronText || ctx.prev->cls == WordClass::Aux))
          tok.cls = WordClass::Verb;
      } else if (std::all_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == ','; })) {
        tok.cls = WordClass::Num;
      } else {
        tok.cls = classify_open(w, ctx);
      }
      // "how long", "how many": the modifier belongs to the question word.
      if (prev_lower == "how" && (tok.cls == WordClass::Adj || tok.cls == WordClass::Quant)) tok.cls = WordClass::Adv;
      // "with respect to"
      if (w == "respect" && prev_lower == "with") tok.cls = WordClass::Adv;
    }
    tok.tag = coarse_of(tok.cls);

    if (i == 0 && tok.cls == WordClass::Copula) ctx.polar_copula = true;
    if (tok.cls == WordClass::Rel || tok.cls == WordClass::Wh || tok.cls == WordClass::Conj ||
        tok.cls == WordClass::Punct || tok.cls == WordClass::Verb)
      ctx.polar_copula = false;
    if (is_word[i] && ctx.prev && ctx.prev->cls == WordClass::Wh && kind_words().count(text::lower(tok.text)))
      ctx.kind_question = true;
    if (tok.cls == WordClass::Aux) ctx.pending_aux = true;
    if (tok.cls == WordClass::Verb) ctx.pending_aux = false;
    if (tok.cls != WordClass::Conj && tok.cls != WordClass::Punct)
      ctx.last_verbal = tok.cls == WordClass::Verb;
    ctx.prev2 = ctx.prev;
    ctx.prev = &tok;
  }
}

bool is_punct_char(char c) { return c == '?' || c == '!' || c == ';' || c == ','; }

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::vector<bool> is_word;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto ws = [&](std::size_t k) { return std::isspace(static_cast<unsigned char>(text[k])) != 0; };
  auto sentence_stop = [&](std::size_t k) {
    return (text[k] == '.' || text[k] == ':') && (k + 1 >= n || !std::isalnum(static_cast<unsigned char>(text[k + 1])));
  };
  while (i < n) {
    if (ws(i)) {
      ++i;
      continue;
    }
    const char c = text[i];
    Token tok;
    tok.begin = i;
    bool word = false;
    if (c == '[') {
      auto close = text.find(']', i);
      tok.end = close == std::string_view::npos ? n : close + 1;
      tok.cls = WordClass::Placeholder;
    } else if (is_punct_char(c) || sentence_stop(i)) {
      tok.end = i + 1;
      tok.cls = WordClass::Punct;
    } else if (c == '(' || c == ')' || c == '"' || c == ']' || c == '\'') {
      tok.end = i + 1;
      tok.cls = WordClass::Other;
    } else {
      std::size_t j = i;
      while (j < n && !ws(j)) {
        const char d = text[j];
        if (is_punct_char(d) || d == '(' || d == ')' || d == '"' || d == '[' || d == ']' || sentence_stop(j)) break;
        ++j;
      }
      tok.end = j;
      word = true;
    }
    tok.text = std::string(text.substr(tok.begin, tok.end - tok.begin));
    tok.tag = coarse_of(tok.cls);
    i = tok.end;
    out.push_back(std::move(tok));
    is_word.push_back(word);
  }
  tag(out, is_word);
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Chunking

struct Choices {
  bool split_set = false;     // "the set of X" read as two entities
  bool have_as_pc = false;    // possessive "have" as a predicate
  bool neg_aux_text = false;  // "does not" kept as text before the main verb
};

enum class Role { Text, EC, PC, PendingAux };

struct Unit {
  Role role;
  std::size_t begin;  // token range [begin, end)
  std::size_t end;
  int group = -1;  // PC grouping (split predicates share a group)
};

class Builder {
 public:
  Builder(const std::vector<Token>& tokens, const ChunkerConfig& config, Choices choices)
      : t_(tokens), cfg_(config), ch_(choices), n_(tokens.size()) {}

  std::vector<Unit> run() {
    std::size_t i = 0;
    while (i < n_) i = step(i);
    for (auto& u : units_)
      if (u.role == Role::PendingAux) u.role = resolved_.count(u.group) ? Role::PC : Role::Text;
    return units_;
  }

  bool used_ambiguous_indicator() const { return used_ambiguous_; }

 private:
  WordClass cls(std::size_t k) const { return k < n_ ? t_[k].cls : WordClass::Punct; }
  std::string low(std::size_t k) const { return k < n_ ? text::lower(t_[k].text) : std::string(); }

  bool catenative_have(std::size_t k) const {
    return cls(k) == WordClass::Have && low(k + 1) == "to" && cls(k + 2) == WordClass::Verb;
  }
  bool perfect_have(std::size_t k) const { return cls(k) == WordClass::Have && cls(k + 1) == WordClass::Verb; }
  bool text_verb(std::size_t k) const { return cfg_.text_verbs.count(low(k)) > 0; }
  bool capitalized(std::size_t k) const {
    return k > 0 && k < n_ && std::isupper(static_cast<unsigned char>(t_[k].text[0]));
  }

  bool verbal_head(std::size_t k) const {
    if (cls(k) == WordClass::Verb) return true;
    if (cls(k) == WordClass::Have) return catenative_have(k) || perfect_have(k) || ch_.have_as_pc || !text_verb(k);
    if (cls(k) == WordClass::Copula) {
      std::size_t j = k + 1;
      while (cls(j) == WordClass::Neg) ++j;
      // "are on a Margherita": a locative copula is the predicate; "of" stays a frame
      return cls(j) == WordClass::Verb || (cls(j) == WordClass::Prep && low(j) != "of" && k > 0 &&
                                           cls(k - 1) != WordClass::Wh && np_end(j + 1) > j + 1);
    }
    return false;
  }

  void push(Role role, std::size_t b, std::size_t e, int group = -1) {
    if (b >= e) return;
    units_.push_back({role, b, e, group});
  }

  // Returns the end of a noun phrase starting at k, or k if there is none.
  std::size_t np_end(std::size_t k) const {
    if (cls(k) == WordClass::Placeholder || cls(k) == WordClass::PronEntity) return k + 1;
    const std::size_t start = k;
    if (cls(k) == WordClass::Det) ++k;
    const std::size_t content = k;
    bool seen_noun = false;
    while (k < n_) {
      const auto c = cls(k);
      if (c == WordClass::Noun || c == WordClass::Num) {
        seen_noun = true;
        ++k;
      } else if (c == WordClass::Adj) {
        // predicative adjective after the head noun, unless it continues a name ("American Hot")
        if (seen_noun && !(capitalized(k) && capitalized(k - 1))) break;
        ++k;
      } else {
        break;
      }
    }
    return k == content ? start : k;
  }

  std::size_t verb_group(std::size_t i) {
    int group;
    if (pending_) {
      group = *pending_;
      resolved_.insert(group);
      pending_.reset();
    } else {
      group = next_group_++;
    }
    std::size_t k = i;
    if (low(k) == "to") ++k;
    while (cls(k) == WordClass::Aux || cls(k) == WordClass::Neg) ++k;
    if (cls(k) == WordClass::Copula) {
      ++k;
      while (cls(k) == WordClass::Neg) ++k;
    }
    if (cls(k) == WordClass::Verb || cls(k) == WordClass::Have) ++k;
    while (true) {
      if (cls(k) == WordClass::Verb && (cls(k - 1) == WordClass::Have || cls(k - 1) == WordClass::Copula)) {
        ++k;
        continue;
      }
      if (low(k) == "to" && cls(k + 1) == WordClass::Verb && catenatives().count(low(k - 1))) {
        k += 2;
        continue;
      }
      break;
    }
    // a particle or preposition directly after the verb belongs to the predicate
    if (cls(k) == WordClass::Prep && !(low(k) == "to" && cls(k + 1) == WordClass::Verb) && low(k) != "given") ++k;
    push(Role::PC, i, k, group);
    return k;
  }

  std::size_t step(std::size_t i) {
    const auto c = cls(i);
    switch (c) {
      case WordClass::Aux: {
        std::size_t j = i + 1;
        while (cls(j) == WordClass::Neg) ++j;
        if (verbal_head(j)) {
          if (j > i + 1 && ch_.neg_aux_text) {
            push(Role::Text, i, j);
            return verb_group(j);
          }
          return verb_group(i);
        }
        if (cls(j) == WordClass::Have || cls(j) == WordClass::Copula) {  // "does not have" read as text
          push(Role::Text, i, j);
          return j;
        }
        if (j > i + 1) {  // "does not" with no verb in reach
          push(Role::Text, i, j);
          return j;
        }
        const int group = next_group_++;
        push(Role::PendingAux, i, i + 1, group);
        pending_ = group;
        return i + 1;
      }
      case WordClass::Copula:
        if (verbal_head(i)) return verb_group(i);
        if (pending_ && low(i) == "been" && cls(i + 1) == WordClass::Prep) return verb_group(i);
        push(Role::Text, i, i + 1);
        return i + 1;
      case WordClass::Have:
        if (!catenative_have(i) && !perfect_have(i) && (ch_.have_as_pc || !text_verb(i))) {
          // "has X been around": the auxiliary waits for the rest of its predicate
          const auto e = np_end(i + 1);
          if (e > i + 1 && (cls(e) == WordClass::Verb || cls(e) == WordClass::Have || (low(e) == "been" && cls(e + 1) == WordClass::Prep))) {
            const int group = next_group_++;
            push(Role::PendingAux, i, i + 1, group);
            pending_ = group;
            return i + 1;
          }
        }
        if (verbal_head(i)) return verb_group(i);
        push(Role::Text, i, i + 1);
        pending_.reset();  // the auxiliary belonged to the possessive
        return i + 1;
      case WordClass::Verb:
        return verb_group(i);
      default:
        break;
    }

    if (low(i) == "to" && cls(i + 1) == WordClass::Verb) {
      if (!units_.empty() && units_.back().role == Role::PC) {
        push(Role::Text, i, i + 1);
        return i + 1;
      }
      return verb_group(i);
    }

    // Frame phrases that name the kind of element: "the (main) types of", "the differences between".
    std::size_t k = i;
    if (cls(k) == WordClass::Det) ++k;
    while (kind_modifiers().count(low(k)) && (cls(k) == WordClass::Adj || cls(k) == WordClass::Quant)) ++k;
    if (cfg_.kind_indicators.count(low(k)) && low(k + 1) == "of") {
      if (cfg_.ambiguous_indicators.count(low(k))) {
        used_ambiguous_ = true;
        if (ch_.split_set) {
          push(Role::EC, i, k + 1);
          return k + 1;
        }
        const auto e = np_end(k + 2);
        if (e > k + 2) {
          push(Role::EC, i, e);
          return e;
        }
        push(Role::EC, i, k + 1);
        return k + 1;
      }
      push(Role::Text, i, k + 2);
      return k + 2;
    }
    if ((low(k) == "difference" || low(k) == "differences") && low(k + 1) == "between") {
      push(Role::Text, i, k + 2);
      return k + 2;
    }
    if (low(i) == "extent") {
      push(Role::Text, i, i + 1);
      return i + 1;
    }

    if (c == WordClass::Noun || c == WordClass::Adj || c == WordClass::Num || c == WordClass::Placeholder ||
        c == WordClass::PronEntity || c == WordClass::Det) {
      const auto e = np_end(i);
      if (e > i) {
        push(Role::EC, i, e);
        return e;
      }
    }
    push(Role::Text, i, i + 1);
    return i + 1;
  }

  const std::vector<Token>& t_;
  const ChunkerConfig& cfg_;
  Choices ch_;
  std::size_t n_;
  std::vector<Unit> units_;
  std::optional<int> pending_;
  std::set<int> resolved_;
  int next_group_ = 0;
  bool used_ambiguous_ = false;
};

std::string span_text(std::string_view original, const std::vector<Token>& tokens, std::size_t b, std::size_t e) {
  if (!original.empty() && tokens[e - 1].end <= original.size())
    return text::collapse_ws(original.substr(tokens[b].begin, tokens[e - 1].end - tokens[b].begin));
  std::string out;
  for (std::size_t k = b; k < e; ++k) {
    if (!out.empty() && tokens[k].cls != WordClass::Punct) out.push_back(' ');
    out += tokens[k].text;
  }
  return out;
}

ChunkedCQ assemble(const std::vector<Unit>& units, const std::vector<Token>& tokens, std::string_view original) {
  ChunkedCQ c;
  c.original = std::string(original);
  int ec = 0;
  std::map<int, int> pc_index;
  for (std::size_t u = 0; u < units.size(); ++u) {
    const auto& unit = units[u];
    if (unit.role == Role::Text) {
      std::size_t e = unit.end;
      while (u + 1 < units.size() && units[u + 1].role == Role::Text) e = units[++u].end;
      c.pieces.push_back({Piece::Kind::Text, 0, span_text(original, tokens, unit.begin, e)});
      continue;
    }
    if (unit.role == Role::EC) {
      c.pieces.push_back({Piece::Kind::EC, ++ec, span_text(original, tokens, unit.begin, unit.end)});
    } else {
      auto it = pc_index.find(unit.group);
      if (it == pc_index.end()) it = pc_index.emplace(unit.group, static_cast<int>(pc_index.size()) + 1).first;
      c.pieces.push_back({Piece::Kind::PC, it->second, span_text(original, tokens, unit.begin, unit.end)});
    }
  }
  return c;
}

std::size_t aux_in_predicates(const ChunkedCQ& c) {
  std::size_t n = 0;
  for (const auto& p : c.pieces) {
    if (p.kind != Piece::Kind::PC) continue;
    for (const auto& w : split_words(p.surface)) {
      auto it = closed_class().find(text::lower(w));
      if (it != closed_class().end() &&
          (it->second == WordClass::Aux || it->second == WordClass::Neg || it->second == WordClass::Have))
        ++n;
    }
  }
  return n;
}

}  // namespace

bool within_bounds(const ChunkedCQ& c) {
  std::map<Slot, int> parts;
  int ec = 0, pc = 0, occurrences = 0;
  for (const auto& p : c.pieces) {
    if (!p.is_slot()) continue;
    ++occurrences;
    if (parts[p.slot()]++ == 0) (p.kind == Piece::Kind::EC ? ec : pc)++;
  }
  if (ec > kMaxEcVariables || pc > kMaxPcVariables || ec + pc > kMaxVariables || occurrences > kMaxSlotOccurrences)
    return false;
  return std::all_of(parts.begin(), parts.end(), [](const auto& kv) { return kv.second <= kMaxPcParts; });
}

bool reconstructs(const ChunkedCQ& c, std::string_view text) {
  auto squeeze = [](std::string_view s) {
    std::string out;
    for (char ch : s)
      if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
    return out;
  };
  std::string joined;
  for (const auto& p : c.pieces) joined += p.surface;
  return squeeze(joined) == squeeze(text);
}

std::vector<ChunkedCQ> chunk_tokens(const std::vector<Token>& tokens, std::string_view original,
                                    const ChunkerConfig& config) {
  if (tokens.empty()) return {};
  const bool both = config.aux_policy == AuxPolicy::EmitBothCandidates;

  struct Candidate {
    ChunkedCQ cq;
    std::tuple<std::size_t, std::size_t, std::size_t, std::size_t> key;
  };
  std::vector<Candidate> found;
  std::size_t order = 0;
  for (int mask = 0; mask < 8; ++mask) {
    Choices choices{(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0};
    if (!both && (choices.have_as_pc || choices.neg_aux_text)) continue;
    Builder builder(tokens, config, choices);
    auto units = builder.run();
    if (choices.split_set && !builder.used_ambiguous_indicator()) continue;
    auto cq = assemble(units, tokens, original);
    cq.aux_as_pc = choices.have_as_pc;
    if (cq.slot_occurrences() == 0 || !within_bounds(cq)) continue;
    const bool duplicate = std::any_of(found.begin(), found.end(),
                                       [&](const Candidate& f) { return f.cq.pieces == cq.pieces; });
    if (duplicate) continue;
    const auto key = std::make_tuple(cq.distinct_slots(), cq.slot_occurrences(), aux_in_predicates(cq), order++);
    found.push_back({std::move(cq), key});
  }
  std::stable_sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) { return a.key < b.key; });
  std::vector<ChunkedCQ> out;
  for (auto& f : found) {
    f.cq.rank = static_cast<int>(out.size()) + 1;
    out.push_back(std::move(f.cq));
  }
  return out;
}

std::vector<ChunkedCQ> chunk(std::string_view text, const ChunkerConfig& config) {
  return chunk_tokens(tokenize(text), text, config);
}

}  // namespace claro
