#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "claro/chunker.hpp"

using namespace claro;

namespace {

std::vector<std::string> patterns(std::string_view text, const ChunkerConfig& config = {}) {
  std::vector<std::string> out;
  for (const auto& c : chunk(text, config)) out.push_back(pattern_string(c));
  return out;
}

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("tokenize keeps placeholders whole and tags words") {
  const auto toks = tokenize("What software can perform [task x]?");
  REQUIRE(toks.size() == 6);
  CHECK(toks[0].cls == WordClass::Wh);
  CHECK(toks[2].cls == WordClass::Aux);
  CHECK(toks[4].text == "[task x]");
  CHECK(toks[4].cls == WordClass::Placeholder);
  CHECK(toks[5].tag == CoarseTag::Punctuation);
  CHECK(toks[4].begin == 26);
  CHECK(toks[4].end == 34);
}

TEST_CASE("kind indicators stay literal") {
  CHECK(patterns("What are the types of furry carnivorous animals?").front() == "What are the types of EC1?");
}

TEST_CASE("auxiliary and main verb form one split PC") {
  CHECK(patterns("What does this animal eat?").front() == "What PC1 EC1 PC1?");
}

TEST_CASE("personal pronoun between split PC parts stays text") {
  CHECK(patterns("Which country do I have to visit to see these animals?").front() ==
        "Which EC1 PC1 I PC1 to PC2 EC2?");
  CHECK(patterns("Which method do I need to use to cook farfalle?").front() == "Which EC1 PC1 I PC1 to PC2 EC2?");
}

TEST_CASE("modal joins the verb phrase") {
  CHECK(patterns("What software can perform [task x]?").front() == "What EC1 PC1 EC2?");
  CHECK(patterns("What data are measured for gait assessment?").front() == "What EC1 PC1 EC2?");
}

TEST_CASE("negation has a text reading and a folded reading") {
  const auto a = patterns("Is there an animal that does not drink water?");
  CHECK(has(a, "Is there EC1 that PC1 EC2?"));
  CHECK(has(a, "Is there EC1 that does not PC1 EC2?"));
  const auto b = patterns("Which animal does not drink water?");
  CHECK(has(b, "Which EC1 PC1 EC2?"));
  CHECK(has(b, "Which EC1 does not PC1 EC2?"));
}

TEST_CASE("capitalised name keeps its trailing adjective") {
  CHECK(patterns("What type of pizza is an American Hot?").front() == "What type of EC1 is EC2?");
}

TEST_CASE("copula with a locative preposition is a predicate") {
  CHECK(patterns("How many toppings are on a Margherita?").front() == "How many EC1 PC1 EC2?");
  CHECK(patterns("What is the licence of [software x]?").front() == "What is EC1 of EC2?");
}

TEST_CASE("emit-both policy yields the auxiliary-as-PC reading") {
  const auto p = patterns("Does it have a tutorial?");
  REQUIRE(p.size() >= 2);
  CHECK(p[0] == "Does EC1 have EC2?");
  CHECK(has(p, "PC1 EC1 PC1 EC2?"));

  ChunkerConfig keep;
  keep.aux_policy = AuxPolicy::KeepAsText;
  CHECK_FALSE(has(patterns("Does it have a tutorial?", keep), "PC1 EC1 PC1 EC2?"));
}

TEST_CASE("ambiguous kind indicator 'set' yields both readings") {
  const auto p = patterns("What is the set of datatype qualities for [a datatype X]?");
  CHECK(has(p, "What is EC1 for EC2?"));
  CHECK(has(p, "What is EC1 of EC2 for EC3?"));
  const auto q =
      patterns("What is the set of datatypes that have [a datatype quality X] and [characterizing operation Y]?");
  CHECK(has(q, "What is EC1 of EC2 that have EC3 and EC4?"));
}

TEST_CASE("every candidate reconstructs the input and stays within bounds") {
  const std::vector<std::string> inputs{
      "Which pizzas have nuts?",
      "How many devices belong to an organization?",
      "When does the monitoring of the patient start?",
      "What is the difference between a mixture and a solution?",
      "Which country do I have to visit to see these animals?",
      "Is there an animal that does not drink water?",
  };
  for (const auto& in : inputs) {
    const auto cs = chunk(in);
    REQUIRE_FALSE(cs.empty());
    for (const auto& c : cs) {
      CHECK(reconstructs(c, in));
      CHECK(within_bounds(c));
      CHECK(has_dense_indices(c));
    }
    for (std::size_t i = 1; i < cs.size(); ++i) CHECK(cs[i - 1].rank < cs[i].rank);
  }
}

TEST_CASE("within_bounds rejects too many entity variables") {
  const auto c = parse_gold_chunking("Are (a)[EC1], (b)[EC2], (c)[EC3], (d)[EC4] and (e)[EC5] related?");
  CHECK_FALSE(within_bounds(c));
  CHECK(within_bounds(parse_gold_chunking("Which (pizzas)[EC1] (have)[PC1] (nuts)[EC2]?")));
}

TEST_CASE("gold chunking syntax round-trips") {
  const std::string g = "What is (the set)[EC1] of ([software x])[EC2]?";
  const auto c = parse_gold_chunking(g);
  CHECK(format_gold_chunking(c) == g);
  CHECK(pattern_string(c) == "What is EC1 of EC2?");
  CHECK(c.surface() == "What is the set of [software x]?");
  CHECK_THROWS_AS(parse_gold_chunking("What is (x)[EC0]?"), GoldSyntaxError);
}
