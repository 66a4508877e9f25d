#include "claro/matcher.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "claro/text_util.hpp"

namespace claro {

std::string_view to_string(Exactness e) { return e == Exactness::Exact ? "exact" : "normalized"; }

TemplateIndex::TemplateIndex(const TemplateSet& set, const std::vector<NormalizationRule>& rules)
    : set_(&set), rules_(rules) {
  entries_.reserve(set.templates.size());
  for (const auto& t : set.templates) {
    const auto p = pattern_of(t);
    auto norm = normalize(p, rules_);
    entries_.push_back({&t, pattern_key(p), pattern_key(norm.pattern), std::move(norm.applied)});
  }
}

namespace {

std::vector<RuleKind> merge_rules(const std::vector<RuleKind>& a, const std::vector<RuleKind>& b) {
  std::set<RuleKind> all(a.begin(), a.end());
  all.insert(b.begin(), b.end());
  return {all.begin(), all.end()};
}

}  // namespace

std::vector<MatchResult> match(const ChunkedCQ& c, const TemplateIndex& index, bool allow_normalized) {
  std::vector<MatchResult> out;
  const auto p = pattern_of(c);
  const auto key = pattern_key(p);
  const auto pattern = to_string(p);
  const auto bindings = c.bindings();
  for (const auto& e : index.entries())
    if (e.exact_key == key) out.push_back({e.tmpl->ref, bindings, {}, Exactness::Exact, c.rank, pattern});
  if (!allow_normalized) return out;

  const auto norm = normalize(p, index.rules());
  const auto norm_key = pattern_key(norm.pattern);
  for (const auto& e : index.entries()) {
    if (e.exact_key == key || e.normalized_key != norm_key) continue;
    out.push_back({e.tmpl->ref, bindings, merge_rules(norm.applied, e.applied), Exactness::Normalized, c.rank, pattern});
  }
  return out;
}

std::vector<MatchResult> match(const ChunkedCQ& c, const TemplateSet& set, bool allow_normalized) {
  return match(c, TemplateIndex(set), allow_normalized);
}

std::vector<MatchResult> match_text(std::string_view text, const TemplateIndex& index, const ChunkerConfig& config,
                                    bool allow_normalized) {
  std::vector<MatchResult> out;
  std::set<std::pair<TemplateRef, Bindings>> seen;
  for (const auto& candidate : chunk(text, config)) {
    for (auto& m : match(candidate, index, allow_normalized))
      if (seen.emplace(m.ref, m.bindings).second) out.push_back(std::move(m));
  }
  // exact matches of any candidate precede normalized ones; rank order is kept within each group
  std::stable_partition(out.begin(), out.end(), [](const MatchResult& m) { return m.exactness == Exactness::Exact; });
  return out;
}

TemplateSet derive_default_templates(const std::vector<Pattern>& patterns, const std::vector<NormalizationRule>& rules) {
  struct Group {
    Pattern base;
    std::string base_key;
    std::vector<Pattern> variants;
    std::set<std::string> variant_keys;
  };
  std::vector<Group> groups;
  std::map<std::string, std::size_t> by_key;
  for (const auto& p : patterns) {
    const auto norm = normalize(p, rules).pattern;
    const auto nkey = pattern_key(norm);
    auto it = by_key.find(nkey);
    if (it == by_key.end()) {
      it = by_key.emplace(nkey, groups.size()).first;
      groups.push_back({norm, nkey, {}, {}});
    }
    auto& g = groups[it->second];
    const auto key = pattern_key(p);
    if (key != g.base_key && g.variant_keys.insert(key).second) g.variants.push_back(p);
  }

  TemplateSet out;
  out.name = "derived";
  out.version = "1";
  int id = 0;
  for (const auto& g : groups) {
    ++id;
    out.templates.push_back({{id, std::nullopt}, segments_of(g.base), Provenance::DatasetDerived});
    char letter = 'a';
    for (const auto& v : g.variants) out.templates.push_back({{id, letter++}, segments_of(v), Provenance::DatasetDerived});
  }
  return out;
}

namespace {

struct FragmentKeys {
  std::vector<std::string> tokens;  // lowercase words or slot names
};

std::vector<FragmentKeys> fragment_keys(const TemplateSet& set) {
  std::vector<FragmentKeys> keys;
  keys.reserve(set.templates.size());
  for (const auto& t : set.templates) {
    FragmentKeys k;
    for (const auto& tok : pattern_of(t).tokens) {
      if (const auto* w = std::get_if<std::string>(&tok))
        k.tokens.push_back(text::lower(*w));
      else
        k.tokens.push_back(std::get<Slot>(tok).str());
    }
    keys.push_back(std::move(k));
  }
  return keys;
}

std::vector<FragmentPair> fragments_of(const TemplateSet& set, const std::vector<FragmentKeys>& keys, std::size_t a) {
  std::vector<FragmentPair> out;
  auto prefix = keys[a].tokens;
  if (!prefix.empty() && prefix.back() == "?") prefix.pop_back();
  if (prefix.empty()) return out;
  for (std::size_t b = 0; b < keys.size(); ++b) {
    if (a == b) continue;
    const auto& other = keys[b].tokens;
    if (other.size() <= prefix.size()) continue;
    if (std::equal(prefix.begin(), prefix.end(), other.begin()) && other[prefix.size()] != "?")
      out.push_back({set.templates[a].ref, set.templates[b].ref});
  }
  return out;
}

void sort_pairs(std::vector<FragmentPair>& pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const FragmentPair& x, const FragmentPair& y) {
    return std::tie(x.fragment, x.container) < std::tie(y.fragment, y.container);
  });
}

}  // namespace

std::vector<FragmentPair> fragment_analysis_serial(const TemplateSet& set) {
  const auto keys = fragment_keys(set);
  std::vector<FragmentPair> out;
  for (std::size_t a = 0; a < keys.size(); ++a) {
    auto part = fragments_of(set, keys, a);
    out.insert(out.end(), part.begin(), part.end());
  }
  sort_pairs(out);
  return out;
}

std::vector<FragmentPair> fragment_analysis(const TemplateSet& set) {
  const auto keys = fragment_keys(set);
  const auto n = static_cast<long>(keys.size());
  std::vector<std::vector<FragmentPair>> per(keys.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long a = 0; a < n; ++a) per[static_cast<std::size_t>(a)] = fragments_of(set, keys, static_cast<std::size_t>(a));
  std::vector<FragmentPair> out;
  for (auto& part : per) out.insert(out.end(), part.begin(), part.end());
  sort_pairs(out);
  return out;
}

std::vector<TemplateRef> distinct_fragments(const std::vector<FragmentPair>& pairs) {
  std::set<TemplateRef> s;
  for (const auto& p : pairs) s.insert(p.fragment);
  return {s.begin(), s.end()};
}

}  // namespace claro
