#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "claro/evaluator.hpp"
#include "claro/text_util.hpp"

using namespace claro;

namespace {

const std::string kData = CLARO_DATA_DIR;

std::vector<ComparisonTemplateSet> all_sets() {
  return {load_comparison_set(TemplateSetName::CLaRO, kData + "/claro_templates.txt"),
          load_comparison_set(TemplateSetName::Ren, kData + "/comparison/ren_templates.txt"),
          load_comparison_set(TemplateSetName::Bezerra, kData + "/comparison/bezerra_templates.txt")};
}

std::vector<std::pair<std::string, std::vector<EvaluationCQ>>> corpora() {
  return {{"SetA", load_fixture(kData + "/fixtures/set_a.txt")},
          {"SetB", load_fixture(kData + "/fixtures/set_b.txt")},
          {"SetC", load_fixture(kData + "/fixtures/set_c.txt")}};
}

}  // namespace

TEST_CASE("fixture parsing") {
  const auto cqs = parse_fixture(
      "# comment\n"
      "id: q1\ntext: Which pizzas have nuts?\ngold: Which (pizzas)[EC1] (have)[PC1] (nuts)[EC2]?\n"
      "template: 81\ndematerialized: yes\n\n"
      "id: q2\ntext: Find all pizzas.\nvalidity: imperative\nreword: Which pizzas are there?\n");
  REQUIRE(cqs.size() == 2);
  CHECK(cqs[0].gold_template == TemplateRef{81, {}});
  CHECK(cqs[0].dematerialized);
  CHECK(cqs[0].gold.size() == 1);
  CHECK(cqs[1].validity == Validity::Imperative);
  CHECK(cqs[1].rewording == "Which pizzas are there?");
  CHECK(parse_fixture(format_fixture(cqs)).size() == 2);
  CHECK(format_fixture(parse_fixture(format_fixture(cqs))) == format_fixture(cqs));
}

TEST_CASE("fixture errors carry line numbers") {
  try {
    parse_fixture("id: a\ntext: x?\n\nid: a\ntext: y?\n");
    FAIL("expected FixtureError");
  } catch (const FixtureError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS(parse_fixture("id: a\ntext: x?\ncolour: red\n"), FixtureError);
  CHECK_THROWS_AS(parse_fixture("id: a\ntext: x?\nvalidity: imperative\ntemplate: 81\n"), FixtureError);
  CHECK_THROWS_AS(parse_fixture("text: x?\n"), FixtureError);
}

TEST_CASE("coverage table") {
  const auto table = compare(corpora(), all_sets());
  CHECK(table.columns == std::vector<std::string>{"SetA", "SetB", "SetC", "Combined"});
  CHECK(table.totals == std::vector<std::size_t>{24, 20, 21, 65});
  CHECK(table.valid == std::vector<std::size_t>{24, 15, 12, 51});
  CHECK(table.row(TemplateSetName::CLaRO).matched == std::vector<std::size_t>{20, 14, 11, 45});
  CHECK(table.row(TemplateSetName::CLaRO).percent == std::vector<int>{83, 93, 92, 88});
  CHECK(table.row(TemplateSetName::Ren).matched == std::vector<std::size_t>{6, 5, 6, 17});
  CHECK(table.row(TemplateSetName::Bezerra).matched == std::vector<std::size_t>{3, 3, 4, 10});
  CHECK(table.dominance_violations().empty());
  for (const auto& [name, reports] : table.reports)
    for (const auto& o : reports.at(TemplateSetName::CLaRO).outcomes) CHECK_MESSAGE(o.agrees_with_gold, o.id);
  CHECK(format_table(table).find("Match CLaRO") != std::string::npos);
  CHECK(format_table_csv(table).find("match_claro") != std::string::npos);
}

TEST_CASE("parallel evaluation equals the serial reference") {
  const auto sets = all_sets();
  for (const auto& [name, cqs] : corpora())
    for (const auto& s : sets) {
      const auto a = evaluate(cqs, s);
      const auto b = evaluate_serial(cqs, s);
      CHECK(a.matched == b.matched);
      REQUIRE(a.outcomes.size() == b.outcomes.size());
      for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
        CHECK(a.outcomes[i].id == b.outcomes[i].id);
        CHECK(a.outcomes[i].outcome == b.outcomes[i].outcome);
        CHECK(a.outcomes[i].matched == b.outcomes[i].matched);
      }
    }
  CHECK_THROWS_AS(evaluate({}, sets[0]), std::invalid_argument);
}

TEST_CASE("specific outcomes") {
  const auto claro = all_sets()[0];
  const auto a = evaluate(load_fixture(kData + "/fixtures/set_a.txt"), claro);
  auto outcome = [&](const std::string& id) {
    return std::find_if(a.outcomes.begin(), a.outcomes.end(), [&](const CQOutcome& o) { return o.id == id; });
  };
  CHECK(outcome("swo11")->outcome == Outcome::NoMatch);
  CHECK(outcome("swo01")->outcome == Outcome::Exact);
  const auto swo71 = outcome("swo71");
  CHECK(std::find(swo71->matched.begin(), swo71->matched.end(), TemplateRef{29, {}}) != swo71->matched.end());

  const auto c = evaluate(load_fixture(kData + "/fixtures/set_c.txt"), claro);
  CHECK(c.outcomes[0].outcome == Outcome::Exact);
  const auto pizza8 = std::find_if(c.outcomes.begin(), c.outcomes.end(), [](auto& o) { return o.id == "pizza8"; });
  CHECK(pizza8->outcome == Outcome::Invalid);

  EvaluateOptions no_reword;
  no_reword.allow_rewording = false;
  CHECK(evaluate(load_fixture(kData + "/fixtures/set_c.txt"), claro, no_reword).matched == 5);
}

TEST_CASE("verification set is every tenth corpus CQ") {
  const auto corpus = load_fixture(kData + "/corpus/training_corpus.txt");
  const auto set_a = load_fixture(kData + "/fixtures/set_a.txt");
  REQUIRE(corpus.size() == 234);
  REQUIRE(set_a.size() == 24);
  for (std::size_t i = 0; i < set_a.size(); ++i) {
    CHECK(corpus[i * 10].id == set_a[i].id);
    CHECK(corpus[i * 10].text == set_a[i].text);
  }
}

TEST_CASE("pattern mining over the training corpus") {
  const auto corpus = load_fixture(kData + "/corpus/training_corpus.txt");
  const auto mined = mine_patterns(mining_input(corpus));
  CHECK(mined.size() == 106);

  std::vector<std::string> expected;
  for (const auto& line : text::split(read_file(kData + "/corpus/patterns_106.txt"), '\n')) {
    if (line.empty() || line[0] == '#') continue;
    expected.push_back(line.substr(line.find('\t') + 1));
  }
  auto sorted_mined = mined;
  std::sort(sorted_mined.begin(), sorted_mined.end());
  std::sort(expected.begin(), expected.end());
  CHECK(sorted_mined == expected);

  // a one-off materialized pattern is dropped, a one-off dematerialized one kept
  CHECK(std::find(mined.begin(), mined.end(), "Is there EC1 that PC1 EC2?") == mined.end());
  CHECK(std::find(mined.begin(), mined.end(), "What EC1 PC1 EC2?") != mined.end());
}

TEST_CASE("mining thresholds") {
  auto in = [](const char* gold, bool demat) { return MiningInput{parse_gold_chunking(gold), demat}; };
  const auto mined = mine_patterns({in("Which (a)[EC1] (b)[PC1] (c)[EC2]?", false),
                                    in("Which (d)[EC1] (e)[PC1] (f)[EC2]?", false),
                                    in("Is (a)[EC1] (b)[EC2]?", false),
                                    in("Who (made)[PC1] ([x])[EC1]?", true)});
  CHECK(mined == std::vector<std::string>{"Which EC1 PC1 EC2?", "Who PC1 EC1?"});
}

TEST_CASE("validity heuristic") {
  CHECK(classify_validity("Find all vegetarian pizzas.").validity == Validity::Imperative);
  CHECK(classify_validity("How to measure heart rate variability with a wearable?").validity ==
        Validity::Procedural);
  CHECK(classify_validity("Why universities are organized into departments?").validity == Validity::Explainer);
  const auto ok = classify_validity("Which pizzas have nuts?");
  CHECK(ok.validity == Validity::Valid);
  CHECK(ok.confidence == doctest::Approx(0.8));
  CHECK(parse_validity("abox-query") == Validity::AboxQuery);
  CHECK(to_string(Validity::ModellingDiscussion) == "modelling-discussion");
}
