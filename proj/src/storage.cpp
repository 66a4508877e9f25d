#include "claro/storage.hpp"

#include <expat.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <regex>

#include "claro/authoring.hpp"
#include "claro/template_dsl.hpp"
#include "claro/text_util.hpp"

namespace claro {

namespace {

// ---------------------------------------------------------------------------
// Writing

void check_chars(std::string_view s, const std::string& what) {
  for (unsigned char c : s)
    if (c < 0x20 && c != '\t' && c != '\n' && c != '\r')
      throw StorageError("control character in " + what + " cannot be stored in XML");
}

std::string escape(std::string_view s, bool attribute) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += attribute ? "&quot;" : "\""; break;
      case '\n': out += attribute ? "&#10;" : "\n"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += attribute ? "&#9;" : "\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string attr(std::string_view name, std::string_view value) {
  return " " + std::string(name) + "=\"" + escape(value, true) + "\"";
}

// ---------------------------------------------------------------------------
// Reading: expat builds a small element tree, then the schema is checked.

struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::string text;
  std::vector<std::unique_ptr<Element>> children;
  Element* parent = nullptr;
  long line = 0;

  const std::string* attribute(std::string_view key) const {
    for (const auto& [k, v] : attrs)
      if (k == key) return &v;
    return nullptr;
  }
};

struct ParseState {
  std::unique_ptr<Element> root;
  Element* current = nullptr;
  XML_Parser parser = nullptr;
};

void XMLCALL on_start(void* data, const XML_Char* name, const XML_Char** atts) {
  auto* st = static_cast<ParseState*>(data);
  auto el = std::make_unique<Element>();
  el->name = name;
  el->line = static_cast<long>(XML_GetCurrentLineNumber(st->parser));
  for (int i = 0; atts[i] != nullptr; i += 2) el->attrs.emplace_back(atts[i], atts[i + 1]);
  el->parent = st->current;
  Element* raw = el.get();
  if (st->current == nullptr)
    st->root = std::move(el);
  else
    st->current->children.push_back(std::move(el));
  st->current = raw;
}

void XMLCALL on_end(void* data, const XML_Char*) {
  auto* st = static_cast<ParseState*>(data);
  st->current = st->current->parent;
}

void XMLCALL on_text(void* data, const XML_Char* s, int len) {
  auto* st = static_cast<ParseState*>(data);
  if (st->current != nullptr) st->current->text.append(s, static_cast<std::size_t>(len));
}

std::unique_ptr<Element> parse_xml(std::string_view xml) {
  ParseState st;
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(XML_ParserCreate("UTF-8"),
                                                                                      &XML_ParserFree);
  if (!parser) throw StorageError("cannot create XML parser");
  st.parser = parser.get();
  XML_SetUserData(parser.get(), &st);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);
  if (XML_Parse(parser.get(), xml.data(), static_cast<int>(xml.size()), XML_TRUE) == XML_STATUS_ERROR) {
    throw StorageError("malformed XML at line " + std::to_string(XML_GetCurrentLineNumber(parser.get())) + ": " +
                       XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  if (!st.root) throw StorageError("empty XML document");
  return std::move(st.root);
}

bool blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

void allow_attrs(const Element& el, std::initializer_list<std::string_view> allowed, const std::string& path) {
  for (const auto& [k, v] : el.attrs)
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw StorageError("unexpected attribute '" + k + "'", path);
}

const std::string& required(const Element& el, std::string_view key, const std::string& path) {
  const auto* v = el.attribute(key);
  if (v == nullptr) throw StorageError("missing '" + std::string(key) + "' attribute on <" + el.name + ">", path);
  return *v;
}

std::optional<std::string> timestamp(const Element& el, std::string_view key, const std::string& path) {
  const auto* v = el.attribute(key);
  if (v == nullptr) return std::nullopt;
  if (!is_iso8601_utc(*v)) throw StorageError("'" + std::string(key) + "' is not an ISO-8601 UTC timestamp", path);
  return *v;
}

Instantiation read_instantiation(const Element& el, const std::string& path) {
  allow_attrs(el, {"templateId", "variant"}, path);
  Instantiation inst;
  auto id = required(el, "templateId", path);
  if (const auto* v = el.attribute("variant")) id += *v;
  const auto ref = parse_template_ref(id);
  if (!ref) throw StorageError("invalid template reference '" + id + "'", path);
  inst.ref = *ref;
  if (!blank(el.text)) throw StorageError("unexpected text in <instantiation>", path);
  std::size_t n = 0;
  for (const auto& child : el.children) {
    const auto cpath = path + "/" + child->name + "[" + std::to_string(++n) + "]";
    if (child->name != "binding") throw StorageError("unexpected element <" + child->name + ">", cpath);
    allow_attrs(*child, {"slot"}, cpath);
    const auto& slot_name = required(*child, "slot", cpath);
    const auto slot = parse_slot(slot_name);
    if (!slot) throw StorageError("invalid slot '" + slot_name + "'", cpath);
    if (!child->children.empty()) throw StorageError("<binding> cannot contain elements", cpath);
    inst.bindings[*slot].push_back(child->text);
  }
  return inst;
}

CompetencyQuestion read_cq(const Element& el, const std::string& path) {
  allow_attrs(el, {"text", "created", "modified"}, path);
  CompetencyQuestion q;
  q.text = required(el, "text", path);
  q.created = timestamp(el, "created", path);
  q.modified = timestamp(el, "modified", path);
  if (!blank(el.text)) throw StorageError("unexpected text in <cq>", path);
  std::size_t ni = 0, no = 0;
  for (const auto& child : el.children) {
    if (child->name == "instantiation") {
      q.instantiates.push_back(read_instantiation(*child, path + "/instantiation[" + std::to_string(++ni) + "]"));
    } else if (child->name == "forOntology") {
      const auto cpath = path + "/forOntology[" + std::to_string(++no) + "]";
      allow_attrs(*child, {"ref"}, cpath);
      q.for_ontologies.push_back(required(*child, "ref", cpath));
    } else {
      throw StorageError("unexpected element <" + child->name + ">", path + "/" + child->name);
    }
  }
  return q;
}

}  // namespace

bool is_iso8601_utc(std::string_view s) {
  static const std::regex re(R"(\d{4}-(0[1-9]|1[0-2])-(0[1-9]|[12]\d|3[01])T([01]\d|2[0-3]):[0-5]\d:[0-5]\d(\.\d{1,9})?Z)");
  return std::regex_match(s.begin(), s.end(), re);
}

std::string now_iso8601_utc() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string save_document(const CQDocument& doc) {
  if (text::trim(doc.title).empty()) throw StorageError("document title must not be empty", "/cqDocument");
  check_chars(doc.title, "title");
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<cqDocument" + attr("title", doc.title) + attr("templateSetName", doc.template_set_name) +
         attr("templateSetVersion", doc.template_set_version) + ">\n";
  std::size_t n = 0;
  for (const auto& q : doc.questions) {
    const auto path = "/cqDocument/cq[" + std::to_string(++n) + "]";
    check_chars(q.text, "question text");
    for (const auto* ts : {&q.created, &q.modified})
      if (*ts && !is_iso8601_utc(**ts)) throw StorageError("timestamp '" + **ts + "' is not ISO-8601 UTC", path);
    out += "  <cq" + attr("text", q.text);
    if (q.created) out += attr("created", *q.created);
    if (q.modified) out += attr("modified", *q.modified);
    if (q.instantiates.empty() && q.for_ontologies.empty()) {
      out += "/>\n";
      continue;
    }
    out += ">\n";
    for (const auto& inst : q.instantiates) {
      out += "    <instantiation" + attr("templateId", std::to_string(inst.ref.id));
      if (inst.ref.variant) out += attr("variant", std::string(1, *inst.ref.variant));
      if (inst.bindings.empty()) {
        out += "/>\n";
        continue;
      }
      out += ">\n";
      for (const auto& [slot, parts] : inst.bindings)
        for (const auto& part : parts) {
          check_chars(part, "binding");
          out += "      <binding" + attr("slot", slot.str()) + ">" + escape(part, false) + "</binding>\n";
        }
      out += "    </instantiation>\n";
    }
    for (const auto& ref : q.for_ontologies) {
      check_chars(ref, "ontology reference");
      out += "    <forOntology" + attr("ref", ref) + "/>\n";
    }
    out += "  </cq>\n";
  }
  out += "</cqDocument>\n";
  return out;
}

LoadResult load_document(std::string_view xml, const TemplateSet* templates) {
  const auto root = parse_xml(xml);
  const std::string rpath = "/" + root->name;
  if (root->name != "cqDocument") throw StorageError("root element must be <cqDocument>", rpath);
  allow_attrs(*root, {"title", "templateSetName", "templateSetVersion"}, rpath);
  LoadResult result;
  auto& doc = result.document;
  doc.title = required(*root, "title", rpath);
  if (text::trim(doc.title).empty()) throw StorageError("document title must not be empty", rpath);
  if (const auto* v = root->attribute("templateSetName")) doc.template_set_name = *v;
  if (const auto* v = root->attribute("templateSetVersion")) doc.template_set_version = *v;
  if (!blank(root->text)) throw StorageError("unexpected text in <cqDocument>", rpath);
  std::size_t n = 0;
  for (const auto& child : root->children) {
    const auto path = rpath + "/" + child->name + "[" + std::to_string(++n) + "]";
    if (child->name != "cq") throw StorageError("unexpected element <" + child->name + ">", path);
    doc.questions.push_back(read_cq(*child, path));
  }
  if (templates != nullptr) result.warnings = check_instantiations(doc, *templates);
  return result;
}

std::vector<LoadWarning> check_instantiations(const CQDocument& doc, const TemplateSet& templates) {
  std::vector<LoadWarning> out;
  for (std::size_t i = 0; i < doc.questions.size(); ++i) {
    const auto& q = doc.questions[i];
    for (std::size_t j = 0; j < q.instantiates.size(); ++j) {
      const auto& inst = q.instantiates[j];
      const auto path = "/cqDocument/cq[" + std::to_string(i + 1) + "]/instantiation[" + std::to_string(j + 1) + "]";
      const auto* t = templates.find(inst.ref);
      if (t == nullptr) {
        out.push_back({path, "unresolved template reference " + inst.ref.str()});
        continue;
      }
      try {
        const auto text = instantiate(*t, inst.bindings);
        if (text::normalize_spacing(text) != text::normalize_spacing(q.text))
          out.push_back({path, "bindings instantiate to \"" + text + "\", not the stored text"});
      } catch (const InstantiationError& e) {
        out.push_back({path, e.what()});
      }
    }
  }
  return out;
}

void save_document_file(const std::filesystem::path& path, const CQDocument& doc) {
  const auto xml = save_document(doc);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StorageError("cannot write " + path.string());
  out << xml;
}

LoadResult load_document_file(const std::filesystem::path& path, const TemplateSet* templates) {
  return load_document(read_file(path), templates);
}

}  // namespace claro
