#include "claro/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include "claro/template_dsl.hpp"
#include "claro/text_util.hpp"

namespace claro {

namespace {

constexpr std::pair<Validity, std::string_view> kValidityNames[] = {
    {Validity::Valid, "valid"},
    {Validity::Imperative, "imperative"},
    {Validity::AboxQuery, "abox-query"},
    {Validity::Explainer, "explainer"},
    {Validity::Procedural, "procedural"},
    {Validity::Unanswerable, "unanswerable"},
    {Validity::ModellingDiscussion, "modelling-discussion"},
};

constexpr std::pair<TemplateSetName, std::string_view> kSetNames[] = {
    {TemplateSetName::CLaRO, "claro"},
    {TemplateSetName::Ren, "ren"},
    {TemplateSetName::Bezerra, "bezerra"},
};

}  // namespace

std::string_view to_string(Validity v) {
  for (const auto& [value, name] : kValidityNames)
    if (value == v) return name;
  return "valid";
}

std::optional<Validity> parse_validity(std::string_view s) {
  for (const auto& [value, name] : kValidityNames)
    if (text::iequals(s, name)) return value;
  return std::nullopt;
}

std::string_view to_string(TemplateSetName n) {
  for (const auto& [value, name] : kSetNames)
    if (value == n) return name;
  return "claro";
}

std::optional<TemplateSetName> parse_template_set_name(std::string_view s) {
  for (const auto& [value, name] : kSetNames)
    if (text::iequals(s, name)) return value;
  return std::nullopt;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Exact: return "exact";
    case Outcome::Normalized: return "normalized";
    case Outcome::RewordedMatch: return "reworded-match";
    case Outcome::NoMatch: return "no-match";
    case Outcome::Invalid: return "invalid";
  }
  return "no-match";
}

// ---------------------------------------------------------------------------
// Fixture files

std::vector<EvaluationCQ> parse_fixture(std::string_view contents) {
  std::vector<EvaluationCQ> out;
  std::optional<EvaluationCQ> current;
  std::size_t record_line = 0;
  std::vector<std::string> seen_ids;

  const auto finish = [&]() {
    if (!current) return;
    if (current->id.empty()) throw FixtureError("line " + std::to_string(record_line) + ": record without id", record_line);
    if (current->text.empty())
      throw FixtureError("line " + std::to_string(record_line) + ": record " + current->id + " has no text", record_line);
    if (current->validity != Validity::Valid && current->gold_template)
      throw FixtureError("line " + std::to_string(record_line) + ": invalid CQ " + current->id + " has a gold template",
                         record_line);
    if (std::find(seen_ids.begin(), seen_ids.end(), current->id) != seen_ids.end())
      throw FixtureError("line " + std::to_string(record_line) + ": duplicate id " + current->id, record_line);
    seen_ids.push_back(current->id);
    out.push_back(std::move(*current));
    current.reset();
  };

  std::istringstream in{std::string(contents)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string trimmed = text::trim(line);
    if (trimmed.empty()) {
      finish();
      continue;
    }
    if (trimmed.front() == '#') continue;
    const auto colon = trimmed.find(':');
    if (colon == std::string::npos)
      throw FixtureError("line " + std::to_string(line_no) + ": expected 'key: value'", line_no);
    const std::string key = text::lower(text::trim(trimmed.substr(0, colon)));
    const std::string value = text::trim(trimmed.substr(colon + 1));
    if (!current) {
      current.emplace();
      record_line = line_no;
    }
    const auto fail = [&](const std::string& msg) {
      return FixtureError("line " + std::to_string(line_no) + ": " + msg, line_no);
    };
    try {
      if (key == "id") {
        current->id = value;
      } else if (key == "text") {
        current->text = value;
      } else if (key == "validity") {
        auto v = parse_validity(value);
        if (!v) throw fail("unknown validity '" + value + "'");
        current->validity = *v;
      } else if (key == "gold") {
        current->gold.push_back(parse_gold_chunking(value));
      } else if (key == "template") {
        auto ref = parse_template_ref(value);
        if (!ref) throw fail("malformed template id '" + value + "'");
        current->gold_template = ref;
      } else if (key == "reword") {
        current->rewording = value;
      } else if (key == "reword-gold") {
        current->rewording_gold.push_back(parse_gold_chunking(value));
      } else if (key == "dematerialized") {
        if (value != "yes" && value != "no") throw fail("dematerialized must be yes or no");
        current->dematerialized = value == "yes";
      } else if (key == "source") {
        current->source = value;
      } else if (key == "note") {
        current->note = current->note.empty() ? value : current->note + " " + value;
      } else {
        throw fail("unknown key '" + key + "'");
      }
    } catch (const GoldSyntaxError& e) {
      throw fail(e.what());
    }
  }
  finish();
  return out;
}

std::vector<EvaluationCQ> load_fixture(const std::filesystem::path& path) {
  try {
    return parse_fixture(read_file(path));
  } catch (const FixtureError& e) {
    throw FixtureError(path.string() + ": " + e.what(), e.line());
  }
}

std::string format_fixture(const std::vector<EvaluationCQ>& cqs) {
  std::ostringstream out;
  bool first = true;
  for (const auto& cq : cqs) {
    if (!first) out << '\n';
    first = false;
    out << "id: " << cq.id << '\n' << "text: " << cq.text << '\n' << "validity: " << to_string(cq.validity) << '\n';
    if (cq.dematerialized) out << "dematerialized: yes\n";
    for (const auto& g : cq.gold) out << "gold: " << format_gold_chunking(g) << '\n';
    if (cq.gold_template) out << "template: " << cq.gold_template->str() << '\n';
    if (cq.rewording) out << "reword: " << *cq.rewording << '\n';
    for (const auto& g : cq.rewording_gold) out << "reword-gold: " << format_gold_chunking(g) << '\n';
    if (!cq.source.empty()) out << "source: " << cq.source << '\n';
    if (!cq.note.empty()) out << "note: " << cq.note << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Comparison sets

DslOptions comparison_dsl_options(TemplateSetName n) {
  DslOptions o;
  switch (n) {
    case TemplateSetName::CLaRO:
      break;
    case TemplateSetName::Ren:
      o.lenient = true;
      o.aliases = {{"CE", SlotKind::EC}, {"I", SlotKind::EC},  {"NM", SlotKind::EC}, {"QM", SlotKind::EC},
                   {"OP", SlotKind::PC}, {"OPE", SlotKind::PC}, {"DP", SlotKind::PC}, {"PA", SlotKind::PC}};
      break;
    case TemplateSetName::Bezerra:
      o.lenient = true;
      o.aliases = {{"class", SlotKind::EC}, {"property", SlotKind::PC}};
      break;
  }
  return o;
}

namespace {

std::string alias_note(TemplateSetName n) {
  switch (n) {
    case TemplateSetName::CLaRO: return "";
    case TemplateSetName::Ren: return "CE, I, NM, QM -> EC; OP, OPE, DP, PA -> PC";
    case TemplateSetName::Bezerra: return "class -> EC; property -> PC";
  }
  return "";
}

}  // namespace

ComparisonTemplateSet parse_comparison_set(TemplateSetName n, std::string_view contents) {
  ComparisonTemplateSet s;
  s.name = n;
  s.templates = parse_template_file(contents, comparison_dsl_options(n));
  s.alias_note = alias_note(n);
  return s;
}

ComparisonTemplateSet load_comparison_set(TemplateSetName n, const std::filesystem::path& path) {
  return parse_comparison_set(n, read_file(path));
}

// ---------------------------------------------------------------------------
// Coverage

double CoverageReport::percent() const {
  if (valid == 0) return 0.0;
  return std::round(1000.0 * static_cast<double>(matched) / static_cast<double>(valid)) / 10.0;
}

int CoverageReport::percent_rounded() const {
  if (valid == 0) return 0;
  return static_cast<int>(std::lround(100.0 * static_cast<double>(matched) / static_cast<double>(valid)));
}

namespace {

struct Attempt {
  std::optional<Exactness> exactness;
  std::vector<TemplateRef> refs;
  std::string pattern;
};

Attempt try_chunkings(const std::vector<ChunkedCQ>& chunkings, const TemplateIndex& index, bool allow_normalized) {
  Attempt a;
  if (!chunkings.empty()) a.pattern = pattern_string(chunkings.front());
  const auto collect = [&](const std::vector<MatchResult>& results, Exactness wanted) {
    for (const auto& r : results)
      if (r.exactness == wanted && std::find(a.refs.begin(), a.refs.end(), r.ref) == a.refs.end())
        a.refs.push_back(r.ref);
  };
  for (const auto& c : chunkings) {
    collect(match(c, index, false), Exactness::Exact);
    if (!a.refs.empty()) {
      a.exactness = Exactness::Exact;
      a.pattern = pattern_string(c);
      return a;
    }
  }
  if (!allow_normalized) return a;
  for (const auto& c : chunkings) {
    collect(match(c, index, true), Exactness::Normalized);
    if (!a.refs.empty()) {
      a.exactness = Exactness::Normalized;
      a.pattern = pattern_string(c);
      return a;
    }
  }
  return a;
}

CQOutcome evaluate_one(const EvaluationCQ& cq, const ComparisonTemplateSet& s, const TemplateIndex& index,
                       const EvaluateOptions& options) {
  CQOutcome o;
  o.id = cq.id;
  if (cq.validity != Validity::Valid) {
    o.outcome = Outcome::Invalid;
    return o;
  }
  const auto chunkings = options.use_gold && !cq.gold.empty() ? cq.gold : chunk(cq.text, options.chunker);
  auto attempt = try_chunkings(chunkings, index, options.allow_normalized);
  o.pattern = attempt.pattern;
  if (attempt.exactness) {
    o.outcome = *attempt.exactness == Exactness::Exact ? Outcome::Exact : Outcome::Normalized;
    o.matched = std::move(attempt.refs);
  } else if (options.allow_rewording && cq.rewording) {
    const auto reworded = options.use_gold && !cq.rewording_gold.empty() ? cq.rewording_gold
                                                                         : chunk(*cq.rewording, options.chunker);
    auto second = try_chunkings(reworded, index, options.allow_normalized);
    if (second.exactness) {
      o.outcome = Outcome::RewordedMatch;
      o.matched = std::move(second.refs);
      o.pattern = second.pattern;
    } else {
      o.outcome = Outcome::NoMatch;
    }
  } else {
    o.outcome = Outcome::NoMatch;
  }
  if (s.name == TemplateSetName::CLaRO) {
    o.agrees_with_gold = cq.gold_template
                             ? std::find(o.matched.begin(), o.matched.end(), *cq.gold_template) != o.matched.end()
                             : o.matched.empty();
  }
  return o;
}

CoverageReport assemble(const std::vector<EvaluationCQ>& corpus, const ComparisonTemplateSet& s,
                        std::vector<CQOutcome> outcomes) {
  CoverageReport r;
  r.set_name = std::string(to_string(s.name));
  r.total = corpus.size();
  for (const auto& o : outcomes) {
    if (o.outcome != Outcome::Invalid) ++r.valid;
    if (o.matched_any()) ++r.matched;
  }
  r.outcomes = std::move(outcomes);
  return r;
}

void require_nonempty(const std::vector<EvaluationCQ>& corpus) {
  if (corpus.empty()) throw std::invalid_argument("evaluate: empty corpus");
}

}  // namespace

CoverageReport evaluate(const std::vector<EvaluationCQ>& corpus, const ComparisonTemplateSet& s,
                        const EvaluateOptions& options) {
  require_nonempty(corpus);
  const TemplateIndex index(s.templates);
  std::vector<CQOutcome> outcomes(corpus.size());
  const auto n = static_cast<std::ptrdiff_t>(corpus.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) outcomes[i] = evaluate_one(corpus[i], s, index, options);
  return assemble(corpus, s, std::move(outcomes));
}

CoverageReport evaluate_serial(const std::vector<EvaluationCQ>& corpus, const ComparisonTemplateSet& s,
                               const EvaluateOptions& options) {
  require_nonempty(corpus);
  const TemplateIndex index(s.templates);
  std::vector<CQOutcome> outcomes;
  outcomes.reserve(corpus.size());
  for (const auto& cq : corpus) outcomes.push_back(evaluate_one(cq, s, index, options));
  return assemble(corpus, s, std::move(outcomes));
}

// ---------------------------------------------------------------------------
// Comparison table

const ComparisonTable::Row& ComparisonTable::row(TemplateSetName n) const {
  for (const auto& r : rows)
    if (r.set == n) return r;
  throw std::out_of_range("comparison table has no row for " + std::string(to_string(n)));
}

std::vector<std::string> ComparisonTable::dominance_violations() const {
  std::vector<std::string> out;
  const Row* claro = nullptr;
  for (const auto& r : rows)
    if (r.set == TemplateSetName::CLaRO) claro = &r;
  if (claro == nullptr) return out;
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& r : rows)
      if (r.matched[c] > claro->matched[c]) {
        out.push_back(columns[c]);
        break;
      }
  return out;
}

ComparisonTable compare(const std::vector<std::pair<std::string, std::vector<EvaluationCQ>>>& corpora,
                        const std::vector<ComparisonTemplateSet>& sets, const EvaluateOptions& options) {
  if (corpora.empty()) throw std::invalid_argument("compare: no corpora");
  ComparisonTable t;
  std::size_t total_all = 0;
  std::size_t valid_all = 0;
  for (const auto& [name, cqs] : corpora) t.columns.push_back(name);
  t.columns.push_back("Combined");

  for (const auto& s : sets) {
    ComparisonTable::Row row{s.name, {}, {}};
    std::size_t matched_all = 0;
    std::size_t valid_sum = 0;
    for (const auto& [name, cqs] : corpora) {
      auto report = evaluate(cqs, s, options);
      row.matched.push_back(report.matched);
      row.percent.push_back(report.percent_rounded());
      matched_all += report.matched;
      valid_sum += report.valid;
      t.reports[name][s.name] = std::move(report);
    }
    row.matched.push_back(matched_all);
    row.percent.push_back(
        valid_sum == 0 ? 0 : static_cast<int>(std::lround(100.0 * static_cast<double>(matched_all) / valid_sum)));
    t.rows.push_back(std::move(row));
  }
  for (const auto& [name, cqs] : corpora) {
    const auto valid = static_cast<std::size_t>(
        std::count_if(cqs.begin(), cqs.end(), [](const EvaluationCQ& c) { return c.validity == Validity::Valid; }));
    t.totals.push_back(cqs.size());
    t.valid.push_back(valid);
    total_all += cqs.size();
    valid_all += valid;
  }
  t.totals.push_back(total_all);
  t.valid.push_back(valid_all);
  return t;
}

namespace {

std::string set_label(TemplateSetName n) {
  switch (n) {
    case TemplateSetName::CLaRO: return "CLaRO";
    case TemplateSetName::Ren: return "Ren et al.";
    case TemplateSetName::Bezerra: return "Bezerra et al.";
  }
  return "";
}

}  // namespace

std::string format_table(const ComparisonTable& t) {
  std::ostringstream out;
  const auto line = [&](const std::string& label, const auto& values) {
    out << std::left << std::setw(24) << label;
    for (const auto& v : values) out << std::right << std::setw(10) << v;
    out << '\n';
  };
  line("", t.columns);
  line("Total CQs", t.totals);
  line("Valid CQs", t.valid);
  for (const auto& r : t.rows) line("Match " + set_label(r.set), r.matched);
  for (const auto& r : t.rows) line("Pct " + set_label(r.set), r.percent);
  return out.str();
}

std::string format_table_csv(const ComparisonTable& t) {
  std::ostringstream out;
  out << "row";
  for (const auto& c : t.columns) out << ',' << c;
  out << '\n';
  const auto line = [&](const std::string& label, const auto& values) {
    out << label;
    for (const auto& v : values) out << ',' << v;
    out << '\n';
  };
  line("total", t.totals);
  line("valid", t.valid);
  for (const auto& r : t.rows) line("match_" + std::string(to_string(r.set)), r.matched);
  for (const auto& r : t.rows) line("pct_" + std::string(to_string(r.set)), r.percent);
  return out.str();
}

// ---------------------------------------------------------------------------
// Pattern mining

std::vector<std::string> mine_patterns(const std::vector<MiningInput>& corpus) {
  struct Group {
    std::string display;
    std::size_t count = 0;
    bool dematerialized = false;
  };
  std::vector<std::string> order;
  std::unordered_map<std::string, Group> groups;
  for (const auto& in : corpus) {
    const auto p = pattern_of(in.chunking);
    const auto key = pattern_key(p);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) {
      it->second.display = to_string(p);
      order.push_back(key);
    }
    ++it->second.count;
    it->second.dematerialized = it->second.dematerialized || in.dematerialized;
  }
  std::vector<std::string> out;
  for (const auto& key : order) {
    const auto& g = groups.at(key);
    if (g.count >= 2 || g.dematerialized) out.push_back(g.display);
  }
  return out;
}

std::vector<MiningInput> mining_input(const std::vector<EvaluationCQ>& cqs) {
  std::vector<MiningInput> out;
  for (const auto& cq : cqs) {
    if (cq.gold.empty()) throw FixtureError("record " + cq.id + " has no gold chunking", 0);
    out.push_back({cq.gold.front(), cq.dematerialized});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validity heuristics

ValidityGuess classify_validity(std::string_view text) {
  ValidityGuess g;
  for (const auto& f : lint(text)) g.evidence.push_back(f.kind);
  const auto has = [&](LintKind k) { return std::find(g.evidence.begin(), g.evidence.end(), k) != g.evidence.end(); };
  if (has(LintKind::Imperative)) {
    g.validity = Validity::Imperative;
    g.confidence = 0.9;
  } else if (has(LintKind::ProceduralQuestion)) {
    g.validity = Validity::Procedural;
    g.confidence = 0.8;
  } else if (has(LintKind::ExplainerQuestion)) {
    g.validity = Validity::Explainer;
    g.confidence = 0.8;
  } else if (has(LintKind::InstanceLevelSuspect)) {
    g.validity = Validity::AboxQuery;
    g.confidence = 0.5;
  } else if (has(LintKind::NonQuestion)) {
    g.validity = Validity::Unanswerable;
    g.confidence = 0.4;
  } else {
    g.validity = Validity::Valid;
    g.confidence = g.evidence.empty() ? 0.8 : 0.6;
  }
  return g;
}

}  // namespace claro
