#include "claro/json_io.hpp"

#include "claro/template_dsl.hpp"

namespace claro {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const TemplateRef& r) { return r.str(); }

Json to_json(const Template& t) {
  return {{"ref", t.ref.str()},
          {"templateId", t.ref.id},
          {"variant", t.ref.variant ? Json(std::string(1, *t.ref.variant)) : Json(nullptr)},
          {"pattern", template_pattern(t)},
          {"display", render_user_friendly(t)},
          {"provenance", to_string(t.provenance)}};
}

Json to_json(const TemplateSet& s) {
  return {{"name", s.name}, {"version", s.version}, {"templates", to_json_array(s.templates)}};
}

Json to_json(const Bindings& b) {
  Json out = Json::object();
  for (const auto& [slot, parts] : b) out[slot.str()] = parts;
  return out;
}

Json to_json(const ChunkedCQ& c) {
  Json pieces = Json::array();
  for (const auto& p : c.pieces) {
    const char* kind = p.kind == Piece::Kind::EC ? "EC" : p.kind == Piece::Kind::PC ? "PC" : "text";
    Json piece{{"kind", kind}, {"text", p.surface}};
    if (p.is_slot()) piece["slot"] = p.slot().str();
    pieces.push_back(std::move(piece));
  }
  return {{"rank", c.rank},
          {"pattern", pattern_string(c)},
          {"chunking", format_gold_chunking(c)},
          {"auxAsPc", c.aux_as_pc},
          {"pieces", std::move(pieces)}};
}

Json to_json(const MatchResult& m) {
  Json applied = Json::array();
  for (const auto k : m.applied) applied.push_back(to_string(k));
  return {{"ref", m.ref.str()},
          {"exactness", to_string(m.exactness)},
          {"pattern", m.pattern},
          {"candidateRank", m.candidate_rank},
          {"bindings", to_json(m.bindings)},
          {"applied", std::move(applied)}};
}

Json to_json(const Suggestion& s) {
  return {{"ref", s.ref.str()}, {"display", s.display}, {"hit", to_string(s.hit)}};
}

Json to_json(const LintFinding& f) {
  return {{"kind", to_string(f.kind)},
          {"begin", f.begin},
          {"end", f.end},
          {"message", f.message},
          {"rewrite", f.rewrite ? Json(*f.rewrite) : Json(nullptr)},
          {"splits", f.splits}};
}

Json to_json(const CompetencyQuestion& q) {
  Json inst = Json::array();
  for (const auto& i : q.instantiates) inst.push_back({{"ref", i.ref.str()}, {"bindings", to_json(i.bindings)}});
  return {{"text", q.text},
          {"instantiates", std::move(inst)},
          {"forOntologies", q.for_ontologies},
          {"created", q.created ? Json(*q.created) : Json(nullptr)},
          {"modified", q.modified ? Json(*q.modified) : Json(nullptr)}};
}

Json to_json(const CQDocument& d) {
  return {{"title", d.title},
          {"templateSetName", d.template_set_name},
          {"templateSetVersion", d.template_set_version},
          {"questions", to_json_array(d.questions)}};
}

Json to_json(const LoadWarning& w) { return {{"path", w.path}, {"message", w.message}}; }

Json to_json(const CoverageReport& r) {
  Json outcomes = Json::array();
  for (const auto& o : r.outcomes) {
    Json matched = Json::array();
    for (const auto& m : o.matched) matched.push_back(m.str());
    outcomes.push_back({{"id", o.id},
                        {"outcome", to_string(o.outcome)},
                        {"matched", std::move(matched)},
                        {"pattern", o.pattern},
                        {"agreesWithGold", o.agrees_with_gold}});
  }
  return {{"set", r.set_name},
          {"total", r.total},
          {"valid", r.valid},
          {"matched", r.matched},
          {"percent", r.percent_rounded()},
          {"outcomes", std::move(outcomes)}};
}

Json to_json(const ComparisonTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"set", to_string(r.set)}, {"matched", r.matched}, {"percent", r.percent}});
  return {{"columns", t.columns}, {"total", t.totals}, {"valid", t.valid}, {"rows", std::move(rows)}};
}

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw PayloadError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string string_field(const Json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_string()) throw PayloadError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return string_field(j, key);
}

std::vector<std::string> string_list(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return {};
  const auto& v = j.at(key);
  if (!v.is_array()) throw PayloadError(std::string("field \"") + key + "\" must be an array");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) throw PayloadError(std::string("field \"") + key + "\" must hold strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

}  // namespace

Bindings bindings_from_json(const Json& j) {
  if (!j.is_object()) throw PayloadError("bindings must be an object");
  Bindings out;
  for (const auto& [key, value] : j.items()) {
    const auto slot = parse_slot(key);
    if (!slot) throw PayloadError("bad slot name \"" + key + "\"");
    if (value.is_string()) {
      out[*slot] = {value.get<std::string>()};
    } else if (value.is_array()) {
      for (const auto& part : value) {
        if (!part.is_string()) throw PayloadError("binding parts of " + key + " must be strings");
        out[*slot].push_back(part.get<std::string>());
      }
    } else {
      throw PayloadError("binding of " + key + " must be a string or an array");
    }
  }
  return out;
}

TemplateRef template_ref_from_json(const Json& j) {
  std::string text;
  if (j.is_string()) {
    text = j.get<std::string>();
  } else if (j.is_object()) {
    const auto& id = require(j, "templateId");
    if (id.is_number_integer()) text = std::to_string(id.get<int>());
    else if (id.is_string()) text = id.get<std::string>();
    else throw PayloadError("templateId must be a number or a string");
    if (auto v = optional_string(j, "variant")) text += *v;
  } else {
    throw PayloadError("template reference must be a string or an object");
  }
  const auto ref = parse_template_ref(text);
  if (!ref) throw PayloadError("bad template reference \"" + text + "\"");
  return *ref;
}

CompetencyQuestion question_from_json(const Json& j) {
  CompetencyQuestion q;
  q.text = string_field(j, "text");
  if (j.contains("instantiates") && !j.at("instantiates").is_null()) {
    if (!j.at("instantiates").is_array()) throw PayloadError("field \"instantiates\" must be an array");
    for (const auto& i : j.at("instantiates"))
      q.instantiates.push_back({template_ref_from_json(require(i, "ref")), bindings_from_json(require(i, "bindings"))});
  }
  q.for_ontologies = string_list(j, "forOntologies");
  q.created = optional_string(j, "created");
  q.modified = optional_string(j, "modified");
  return q;
}

CQDocument document_from_json(const Json& j) {
  CQDocument d;
  d.title = string_field(j, "title");
  d.template_set_name = optional_string(j, "templateSetName").value_or("CLaRO");
  d.template_set_version = optional_string(j, "templateSetVersion").value_or("");
  if (j.contains("questions") && !j.at("questions").is_null()) {
    if (!j.at("questions").is_array()) throw PayloadError("field \"questions\" must be an array");
    for (const auto& q : j.at("questions")) d.questions.push_back(question_from_json(q));
  }
  return d;
}

Json suggest_response(const TemplateSet& set, std::string_view query, SuggestMode mode) {
  return {{"query", query}, {"mode", to_string(mode)}, {"suggestions", to_json_array(suggest(query, mode, set))}};
}

Json chunk_response(std::string_view text, const ChunkerConfig& config) {
  return {{"text", text}, {"candidates", to_json_array(chunk(text, config))}};
}

Json match_response(std::string_view text, const TemplateIndex& index, const ChunkerConfig& config) {
  return {{"text", text}, {"matches", to_json_array(match_text(text, index, config))}};
}

Json match_chunking_response(const ChunkedCQ& chunking, const TemplateIndex& index) {
  return {{"text", chunking.surface()}, {"matches", to_json_array(match(chunking, index))}};
}

Json lint_response(std::string_view text) {
  const auto guess = classify_validity(text);
  return {{"text", text},
          {"findings", to_json_array(lint(text))},
          {"validity", {{"label", to_string(guess.validity)}, {"confidence", guess.confidence}}}};
}

Json instantiate_response(const Template& t, const Bindings& bindings) {
  const auto c = instantiate_chunked(t, bindings);
  return {{"ref", t.ref.str()}, {"text", c.surface()}, {"chunking", format_gold_chunking(c)}};
}

}  // namespace claro
