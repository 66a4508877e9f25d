#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "claro/authoring.hpp"
#include "claro/matcher.hpp"
#include "claro/normalize.hpp"
#include "claro/template_dsl.hpp"

using namespace claro;

namespace {

const TemplateSet& claro_set() {
  static const TemplateSet s = load_template_file(CLARO_DATA_DIR "/claro_templates.txt");
  return s;
}

std::set<std::string> refs(std::string_view text) {
  static const TemplateIndex index(claro_set());
  std::set<std::string> out;
  for (const auto& m : match_text(text, index)) out.insert(m.ref.str());
  return out;
}

TemplateSet base_templates_up_to(int last_id) {
  TemplateSet out;
  for (const auto& t : claro_set().templates)
    if (!t.is_variant() && t.ref.id <= last_id) out.templates.push_back(t);
  return out;
}

}  // namespace

TEST_CASE("normalization rules") {
  CHECK(normalize_pattern("Which EC1 PC1 I PC1 to PC2 EC2?") == "Which EC1 PC1 to PC2 EC2?");
  CHECK(normalize_pattern("Which EC1 are EC2?") == "Which EC1 is EC2?");
  CHECK(normalize_pattern("What PC1 EC1 PC1?") == "What PC1 EC1 PC1?");
  CHECK_THROWS_AS(normalize_pattern(""), PatternError);
}

TEST_CASE("normalization is a fixpoint") {
  for (const auto& t : claro_set().templates) {
    const auto once = normalize_pattern(template_pattern(t));
    CHECK(normalize_pattern(once) == once);
  }
}

TEST_CASE("exact matches precede normalized ones") {
  const auto cs = chunk("Which country do I have to visit to see these animals?");
  const auto ms = match(cs.front(), claro_set());
  REQUIRE(ms.size() >= 2);
  CHECK(ms[0].ref.str() == "83a");
  CHECK(ms[0].exactness == Exactness::Exact);
  CHECK(ms[1].ref.str() == "83");
  CHECK(ms[1].exactness == Exactness::Normalized);
  CHECK(match(cs.front(), claro_set(), false).size() == 1);
}

TEST_CASE("bindings carry the chunk phrases") {
  const auto ms = match(parse_gold_chunking("Which (pizzas)[EC1] (have)[PC1] (nuts)[EC2]?"), claro_set());
  REQUIRE_FALSE(ms.empty());
  CHECK(ms[0].ref.str() == "81");
  CHECK(ms[0].bindings.at(Slot{SlotKind::EC, 2}) == std::vector<std::string>{"nuts"});
  CHECK(ms[0].bindings.at(Slot{SlotKind::PC, 1}) == std::vector<std::string>{"have"});
}

TEST_CASE("worked examples resolve to their templates") {
  CHECK(refs("Which software can perform spelling correction?").count("81"));
  CHECK(refs("What software can perform spelling correction?").count("53"));
  CHECK(refs("What is the set of datatypes that have [a datatype quality X] and [characterizing operation Y]?")
            .count("63"));
  const auto dt = refs("What is the set of datatype qualities for [a datatype X]?");
  CHECK(dt.count("38"));
  CHECK(dt.count("61"));
  CHECK(refs("Which animal does not drink water?").count("90"));
}

TEST_CASE("multi-question split parts match separately") {
  const auto parts = split_questions(
      "What is an ECG lead, what are the types of ECG leads, what type of property an ECG lead measures and what "
      "type of measurement an ECG lead can measure?");
  REQUIRE(parts.size() == 4);
  CHECK(refs(parts[0]).count("93"));
  CHECK(refs(parts[1]).count("44"));
}

TEST_CASE("fragment analysis") {
  const auto pairs = fragment_analysis(claro_set());
  CHECK(pairs == fragment_analysis_serial(claro_set()));
  CHECK(std::find(pairs.begin(), pairs.end(), FragmentPair{{22, {}}, {23, {}}}) != pairs.end());
  CHECK(std::find(pairs.begin(), pairs.end(), FragmentPair{{22, {}}, {24, {}}}) != pairs.end());
  for (const auto& p : pairs) CHECK(p.fragment != p.container);

  const auto base = base_templates_up_to(89);
  CHECK(base.size() == 89);
  const auto frags = distinct_fragments(fragment_analysis(base));
  CHECK(frags.size() == 15);
}

TEST_CASE("derive_default_templates groups variants under a normalized base") {
  const std::vector<Pattern> ps{parse_pattern("Which EC1 PC1 I PC1 to PC2 EC2?"), parse_pattern("Which EC1 are EC2?"),
                                parse_pattern("Which EC1 is EC2?"), parse_pattern("Which EC1 PC1 to PC2 EC2?")};
  const auto set = derive_default_templates(ps);
  REQUIRE(set.size() == 4);
  CHECK(template_pattern(set.templates[0]) == "Which EC1 PC1 to PC2 EC2?");
  CHECK_FALSE(set.templates[0].is_variant());
  CHECK(set.templates[1].ref.str() == "1a");
  CHECK(template_pattern(set.templates[1]) == "Which EC1 PC1 I PC1 to PC2 EC2?");
  CHECK(template_pattern(set.templates[2]) == "Which EC1 is EC2?");
  CHECK(set.templates[3].ref.str() == "2a");
}
