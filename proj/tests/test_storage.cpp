#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <string>

#include "claro/storage.hpp"
#include "claro/template_dsl.hpp"

using namespace claro;

namespace {

CQDocument sample() {
  CQDocument d{"Pizza CQs", "CLaRO", "1.0", {}};
  CompetencyQuestion q;
  q.text = "Which pizzas have nuts?";
  q.instantiates.push_back({{81, {}},
                            {{Slot{SlotKind::EC, 1}, {"pizzas"}},
                             {Slot{SlotKind::PC, 1}, {"have"}},
                             {Slot{SlotKind::EC, 2}, {"nuts"}}}});
  q.for_ontologies = {"pizza"};
  q.created = "2026-01-02T03:04:05Z";
  d.questions.push_back(q);
  CompetencyQuestion f;
  f.text = "Free & <form>?";
  d.questions.push_back(f);
  return d;
}

const TemplateSet& claro_set() {
  static const TemplateSet s = load_template_file(CLARO_DATA_DIR "/claro_templates.txt");
  return s;
}

}  // namespace

TEST_CASE("save is deterministic and escapes text") {
  const auto xml = save_document(sample());
  CHECK(xml == save_document(sample()));
  CHECK(xml.find("<instantiation templateId=\"81\">") != std::string::npos);
  CHECK(xml.find("<binding slot=\"PC1\">have</binding>") != std::string::npos);
  CHECK(xml.find("Free &amp; &lt;form&gt;?") != std::string::npos);
}

TEST_CASE("save then load is the identity") {
  const auto loaded = load_document(save_document(sample()), &claro_set());
  CHECK(loaded.document == sample());
  CHECK(loaded.warnings.empty());
}

TEST_CASE("file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "claro_test_storage.cqd.xml";
  save_document_file(path, sample());
  CHECK(load_document_file(path).document == sample());
  std::filesystem::remove(path);
}

TEST_CASE("schema violations name the element") {
  CHECK_THROWS_AS(load_document("<cqDocument"), StorageError);
  try {
    load_document(
        "<cqDocument title=\"t\" templateSetName=\"CLaRO\" templateSetVersion=\"1\">"
        "<cq text=\"a?\"/><cq text=\"b?\"><instantiation/></cq></cqDocument>");
    FAIL("expected StorageError");
  } catch (const StorageError& e) {
    CHECK(e.path() == "/cqDocument/cq[2]/instantiation[1]");
  }
  CQDocument untitled = sample();
  untitled.title.clear();
  CHECK_THROWS_AS(save_document(untitled), StorageError);
  CQDocument bad_time = sample();
  bad_time.questions[0].modified = "yesterday";
  CHECK_THROWS_AS(save_document(bad_time), StorageError);
}

TEST_CASE("instantiations that do not reproduce the text are warnings") {
  CQDocument d = sample();
  d.questions[0].text = "Which pizzas contain nuts?";
  CHECK(check_instantiations(d, claro_set()).size() == 1);
  d.questions[0].instantiates[0].ref = {999, {}};
  const auto ws = check_instantiations(d, claro_set());
  REQUIRE(ws.size() == 1);
  CHECK(ws[0].path == "/cqDocument/cq[1]/instantiation[1]");
}

TEST_CASE("timestamps") {
  CHECK(is_iso8601_utc("2026-01-02T03:04:05Z"));
  CHECK(is_iso8601_utc("2026-01-02T03:04:05.123Z"));
  CHECK_FALSE(is_iso8601_utc("2026-01-02 03:04:05"));
  CHECK_FALSE(is_iso8601_utc("2026-13-02T03:04:05Z"));
  CHECK(is_iso8601_utc(now_iso8601_utc()));
}
