#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "claro/cli.hpp"
#include "claro/json_io.hpp"
#include "claro/matcher.hpp"
#include "claro/template_dsl.hpp"

using namespace claro;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int status = run_cli(args, in, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("worked examples") {
  const auto s = run({"suggest", "What type"});
  CHECK(s.status == kExitOk);
  CHECK(s.out.find("70 ") != std::string::npos);
  CHECK(s.out.find("70a ") != std::string::npos);
  CHECK(s.out.find("71 ") != std::string::npos);
  CHECK(run({"templates", "stats"}).out.find("93 base + 41 variants") != std::string::npos);
  CHECK(run({"coverage", "setA", "--set", "claro", "--gold"}).out == "20/24 valid matched (83%)\n");
}

TEST_CASE("match recovers what instantiate produced") {
  const auto inst = run({"instantiate", "29", "--bind", "PC1=do", "--bind", "PC1=come in", "--bind", "EC1=pizzas",
                         "--bind", "EC2=different sizes"});
  REQUIRE(inst.status == kExitOk);
  CHECK(inst.out == "Do pizzas come in different sizes?\n");
  const auto m = run({"match", "--format", "json"}, inst.out);
  REQUIRE(m.status == kExitOk);
  const auto j = Json::parse(m.out);
  bool found = false;
  for (const auto& x : j["matches"]) found |= x["ref"] == "29";
  CHECK(found);
}

TEST_CASE("json output equals the service encoding") {
  const TemplateSet set = load_template_file(CLARO_DATA_DIR "/claro_templates.txt");
  const TemplateIndex index(set);
  const std::string q = "Which software can perform spelling correction?";
  CHECK(run({"match", q, "--format", "json"}).out == dump(match_response(q, index)));
  CHECK(run({"chunk", q, "--format", "json"}).out == dump(chunk_response(q)));
  CHECK(run({"lint", q, "--format", "json"}).out == dump(lint_response(q)));
  CHECK(run({"suggest", "Does", "--contains", "--format", "json"}).out ==
        dump(suggest_response(set, "Does", SuggestMode::Contains)));
}

TEST_CASE("every subcommand has parseable json output") {
  for (const auto& args : std::vector<std::vector<std::string>>{{"templates", "list"},
                                                               {"templates", "stats"},
                                                               {"templates", "validate"},
                                                               {"templates", "fragments"},
                                                               {"coverage", "setC", "--gold"},
                                                               {"coverage", "table", "--set", "all", "--gold"},
                                                               {"mine", "corpus"}}) {
    auto with = args;
    with.insert(with.end(), {"--format", "json"});
    const auto r = run(with);
    CHECK(r.status == kExitOk);
    CHECK_NOTHROW(Json::parse(r.out));
  }
}

TEST_CASE("exit codes") {
  CHECK(run({}).status == kExitUsage);
  CHECK(run({"frobnicate"}).status == kExitUsage);
  CHECK(run({"suggest", "x", "--no-such-flag"}).status == kExitUsage);
  CHECK(run({"instantiate", "81", "--bind", "nonsense"}).status == kExitUsage);
  CHECK(run({"lint", "x", "--format", "csv"}).status == kExitUsage);
  CHECK(run({"coverage", "/no/such/fixture.txt"}).status == kExitData);
  CHECK(run({"--templates", "/no/such/templates.txt", "suggest", "Does"}).status == kExitData);
  CHECK(run({"instantiate", "81", "--bind", "EC1=x"}).status == kExitData);
  CHECK(run({"--help"}).status == kExitOk);
}

TEST_CASE("template file from the environment") {
  const auto path = std::filesystem::temp_directory_path() / "claro_cli_env_templates.txt";
  {
    std::ofstream out(path);
    out << "1.Is there [EC1] for [EC2]?\n2.Does [EC1] have [EC2]?\n";
  }
  setenv("CLARO_TEMPLATES", path.c_str(), 1);
  const auto r = run({"templates", "stats"});
  unsetenv("CLARO_TEMPLATES");
  std::filesystem::remove(path);
  CHECK(r.out.find("2 templates") == 0);
}

TEST_CASE("document editing") {
  const auto dir = std::filesystem::temp_directory_path() / "claro_cli_docs";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto file = (dir / "pizza.cqd.xml").string();

  CHECK(run({"doc", "new", file, "--title", "Pizza CQs"}).status == kExitOk);
  CHECK(run({"doc", "new", file, "--title", "Again"}).status == kExitUsage);
  auto r = run({"doc", "add", file, "--template", "81", "--bind", "EC1=pizzas", "--bind", "PC1=have", "--bind",
                "EC2=nuts", "--ontology", "pizza"});
  CHECK(r.status == kExitOk);
  CHECK(r.out.find("1. Which pizzas have nuts?  [81]") != std::string::npos);
  CHECK(run({"doc", "add", file, "Is pineapple acceptable on pizza?"}).status == kExitOk);
  CHECK(run({"doc", "add", file, "Which pizzas have olives?", "--template", "81", "--bind", "EC1=pizzas", "--bind",
             "PC1=have", "--bind", "EC2=nuts"})
            .status == kExitData);

  r = run({"doc", "list", file, "--format", "json"});
  const auto j = Json::parse(r.out);
  REQUIRE(j["document"]["questions"].size() == 2);
  CHECK(j["document"]["questions"][0]["forOntologies"][0] == "pizza");
  CHECK(j["warnings"].empty());

  CHECK(run({"doc", "remove", file, "1"}).status == kExitOk);
  CHECK(run({"doc", "remove", file, "5"}).status == kExitUsage);
  const auto copy = (dir / "copy.cqd.xml").string();
  CHECK(run({"doc", "save", file, copy}).status == kExitOk);
  r = run({"doc", "load", copy});
  CHECK(r.status == kExitOk);
  CHECK(r.out.find("1. Is pineapple acceptable on pizza?") != std::string::npos);
  std::filesystem::remove_all(dir);
}
