#include "doctest.h"

#include <filesystem>
#include <thread>

#include "httplib.h"

#include "claro/json_io.hpp"
#include "claro/service.hpp"
#include "claro/template_dsl.hpp"

using namespace claro;

namespace {

/// A service on a free local port over a fresh document directory.
struct Running {
  std::filesystem::path dir;
  Service service;
  int port = 0;
  std::thread thread;
  httplib::Client client;

  explicit Running(const std::string& name)
      : dir(std::filesystem::temp_directory_path() / name),
        service(load_template_file(CLARO_DATA_DIR "/claro_templates.txt"), ServiceConfig{fresh(dir), "*"}),
        port(service.bind_to_any_port("127.0.0.1")),
        thread([this] { service.listen_after_bind(); }),
        client("127.0.0.1", port) {}

  ~Running() {
    service.stop();
    thread.join();
    std::filesystem::remove_all(dir);
  }

  static std::filesystem::path fresh(const std::filesystem::path& p) {
    std::filesystem::remove_all(p);
    return p;
  }

  Json post(const std::string& path, const Json& body, int expect) {
    auto res = client.Post(path, body.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == expect);
    return Json::parse(res->body);
  }
};

}  // namespace

TEST_CASE("revision hash") {
  CHECK(revision_of("") == "cbf29ce484222325");
  CHECK(revision_of("a") == "af63dc4c8601ec8c");
  CHECK(is_valid_document_id("pizza-cqs_2"));
  CHECK_FALSE(is_valid_document_id("../etc"));
  CHECK_FALSE(is_valid_document_id("-x"));
}

TEST_CASE("query endpoints") {
  Running s("claro_test_service_query");

  auto res = s.client.Get("/suggest?q=Does&mode=starts_with");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
  const auto suggestions = Json::parse(res->body)["suggestions"];
  REQUIRE(suggestions.size() == 2);
  CHECK(suggestions[0]["ref"] == "8");
  CHECK(suggestions[1]["ref"] == "9");

  const TemplateSet set = load_template_file(CLARO_DATA_DIR "/claro_templates.txt");
  CHECK(res->body == dump(suggest_response(set, "Does", SuggestMode::StartsWith)));

  const auto m = s.post("/match", {{"text", "Which software can perform spelling correction?"}}, 200);
  REQUIRE_FALSE(m["matches"].empty());
  CHECK(m["matches"][0]["ref"] == "81");
  CHECK(m["matches"][0]["bindings"]["EC2"][0] == "spelling correction");

  const auto g = s.post("/match", {{"chunking", "Which (pizzas)[EC1] (have)[PC1] (nuts)[EC2]?"}}, 200);
  CHECK(g["matches"][0]["ref"] == "81");

  CHECK(s.post("/chunk", {{"text", "Does it have a tutorial?"}}, 200)["candidates"].size() >= 2);
  CHECK(s.post("/lint", {{"text", "Find all vegetarian pizzas."}}, 200)["findings"][0]["kind"] == "imperative");

  const auto inst = s.post("/instantiate",
                           {{"templateId", 81}, {"bindings", {{"EC1", "pizzas"}, {"PC1", "have"}, {"EC2", "nuts"}}}},
                           200);
  CHECK(inst["text"] == "Which pizzas have nuts?");

  CHECK(s.post("/instantiate", {{"templateId", 999}, {"bindings", Json::object()}}, 404)["error"]["code"] ==
        "unknown-template");
  CHECK(s.post("/instantiate", {{"templateId", 81}, {"bindings", {{"EC1", "x"}}}}, 400)["error"]["code"] ==
        "instantiation-failed");
  auto bad = s.client.Post("/lint", "{not json", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  CHECK(Json::parse(bad->body)["error"]["code"] == "invalid-payload");

  auto templates = s.client.Get("/templates");
  REQUIRE(templates);
  CHECK(Json::parse(templates->body)["templates"].size() == 134);
}

TEST_CASE("document lifecycle") {
  Running s("claro_test_service_docs");

  const auto created = s.post("/documents", {{"title", "Pizza CQs"}}, 201);
  const std::string id = created["id"];
  CHECK(id == "pizza-cqs");
  std::string rev = created["revision"];

  auto added = s.post("/documents/" + id + "/questions",
                      {{"templateId", 8},
                       {"bindings", {{"EC1", "a pizza"}, {"EC2", "a thin base"}}},
                       {"revision", rev}},
                      201);
  CHECK(added["document"]["questions"].size() == 1);
  CHECK(added["document"]["questions"][0]["instantiates"][0]["ref"] == "8");
  CHECK(added["revision"] != rev);
  rev = added["revision"];

  // free-form questions are accepted without a template link
  auto free = s.post("/documents/" + id + "/questions", {{"text", "Is pineapple acceptable on pizza?"}}, 201);
  CHECK(free["document"]["questions"][1]["instantiates"].empty());
  const std::string stale = rev;
  rev = free["revision"];

  // a stale PUT is rejected
  Json doc = free["document"];
  doc["title"] = "Renamed";
  auto put = s.client.Put("/documents/" + id, Json{{"revision", stale}, {"document", doc}}.dump(), "application/json");
  REQUIRE(put);
  CHECK(put->status == 409);
  CHECK(Json::parse(put->body)["error"]["detail"]["currentRevision"] == rev);

  put = s.client.Put("/documents/" + id, Json{{"revision", rev}, {"document", doc}}.dump(), "application/json");
  REQUIRE(put);
  CHECK(put->status == 200);
  rev = Json::parse(put->body)["revision"];

  auto del = s.client.Delete("/documents/" + id + "/questions/0");
  REQUIRE(del);
  CHECK(del->status == 200);
  const auto after = Json::parse(del->body);
  CHECK(after["document"]["questions"].size() == 1);
  CHECK(after["document"]["questions"][0]["text"] == "Is pineapple acceptable on pizza?");

  CHECK(s.client.Delete("/documents/" + id + "/questions/5")->status == 404);

  auto xml = s.client.Get("/documents/" + id + "/export");
  REQUIRE(xml);
  CHECK(xml->status == 200);
  CHECK(load_document(xml->body).document.title == "Renamed");

  auto list = s.client.Get("/documents");
  REQUIRE(list);
  CHECK(Json::parse(list->body)["documents"][0]["id"] == id);

  CHECK(s.client.Delete("/documents/" + id)->status == 200);
  CHECK(s.client.Get("/documents/" + id)->status == 404);
}
