#include "claro/service.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>

#include "httplib.h"

#include "claro/authoring.hpp"
#include "claro/text_util.hpp"

namespace claro {

std::string_view to_string(ApiErrorCode c) {
  switch (c) {
    case ApiErrorCode::InvalidPayload: return "invalid-payload";
    case ApiErrorCode::InstantiationFailed: return "instantiation-failed";
    case ApiErrorCode::UnknownTemplate: return "unknown-template";
    case ApiErrorCode::UnknownDocument: return "unknown-document";
    case ApiErrorCode::UnknownQuestion: return "unknown-question";
    case ApiErrorCode::StaleRevision: return "stale-revision";
    case ApiErrorCode::Internal: return "internal";
  }
  return "internal";
}

int http_status(ApiErrorCode c) {
  switch (c) {
    case ApiErrorCode::InvalidPayload:
    case ApiErrorCode::InstantiationFailed: return 400;
    case ApiErrorCode::UnknownTemplate:
    case ApiErrorCode::UnknownDocument:
    case ApiErrorCode::UnknownQuestion: return 404;
    case ApiErrorCode::StaleRevision: return 409;
    case ApiErrorCode::Internal: return 500;
  }
  return 500;
}

Json ApiError::to_json() const {
  return {{"error", {{"code", to_string(code_)}, {"message", what()}, {"detail", detail_}}}};
}

std::string revision_of(std::string_view content) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : content) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool is_valid_document_id(std::string_view id) {
  if (id.empty() || id.size() > 64 || id.front() == '-') return false;
  return std::all_of(id.begin(), id.end(), [](unsigned char c) { return std::isalnum(c) || c == '-' || c == '_'; });
}

// ---------------------------------------------------------------------------
// DocumentStore

namespace {

constexpr std::string_view kSuffix = ".cqd.xml";

std::string slug(std::string_view title) {
  std::string out;
  for (const unsigned char c : title) {
    if (std::isalnum(c)) out.push_back(static_cast<char>(std::tolower(c)));
    else if (!out.empty() && out.back() != '-') out.push_back('-');
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  if (out.size() > 48) out.resize(48);
  return out.empty() ? "document" : out;
}

}  // namespace

DocumentStore::DocumentStore(std::filesystem::path dir, const TemplateSet* templates)
    : dir_(std::move(dir)), templates_(templates) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path DocumentStore::path_of(const std::string& id) const {
  if (!is_valid_document_id(id)) throw ApiError(ApiErrorCode::UnknownDocument, "no document \"" + id + "\"");
  return dir_ / (id + std::string(kSuffix));
}

std::mutex& DocumentStore::lock_for(const std::string& id) {
  std::lock_guard guard(locks_mutex_);
  auto& m = locks_[id];
  if (!m) m = std::make_unique<std::mutex>();
  return *m;
}

DocumentStore::Entry DocumentStore::read(const std::string& id) const {
  const auto path = path_of(id);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ApiError(ApiErrorCode::UnknownDocument, "no document \"" + id + "\"");
  const std::string xml((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    auto loaded = load_document(xml, templates_);
    return {id, revision_of(xml), std::move(loaded.document), std::move(loaded.warnings)};
  } catch (const StorageError& e) {
    throw ApiError(ApiErrorCode::Internal, "stored document \"" + id + "\" is unreadable: " + e.what());
  }
}

DocumentStore::Entry DocumentStore::write(const std::string& id, const CQDocument& doc) {
  std::string xml;
  try {
    xml = save_document(doc);
  } catch (const StorageError& e) {
    throw ApiError(ApiErrorCode::InvalidPayload, e.what(), Json{{"path", e.path()}});
  }
  const auto path = path_of(id);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << xml;
    if (!out) throw ApiError(ApiErrorCode::Internal, "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
  std::vector<LoadWarning> warnings;
  if (templates_) warnings = check_instantiations(doc, *templates_);
  return {id, revision_of(xml), doc, std::move(warnings)};
}

std::vector<DocumentStore::Entry> DocumentStore::list() const {
  std::vector<std::string> ids;
  for (const auto& e : std::filesystem::directory_iterator(dir_)) {
    const auto name = e.path().filename().string();
    if (name.size() > kSuffix.size() && name.ends_with(kSuffix)) {
      auto id = name.substr(0, name.size() - kSuffix.size());
      if (is_valid_document_id(id)) ids.push_back(std::move(id));
    }
  }
  std::sort(ids.begin(), ids.end());
  std::vector<Entry> out;
  for (const auto& id : ids) out.push_back(read(id));
  return out;
}

DocumentStore::Entry DocumentStore::get(const std::string& id) const { return read(id); }

std::string DocumentStore::export_xml(const std::string& id) const {
  std::ifstream in(path_of(id), std::ios::binary);
  if (!in) throw ApiError(ApiErrorCode::UnknownDocument, "no document \"" + id + "\"");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

DocumentStore::Entry DocumentStore::create(const CQDocument& doc, std::optional<std::string> id) {
  static std::mutex create_mutex;
  std::lock_guard guard(create_mutex);
  if (id) {
    if (!is_valid_document_id(*id)) throw ApiError(ApiErrorCode::InvalidPayload, "invalid document id \"" + *id + "\"");
    if (std::filesystem::exists(path_of(*id)))
      throw ApiError(ApiErrorCode::StaleRevision, "document \"" + *id + "\" already exists");
  } else {
    const auto base = slug(doc.title);
    id = base;
    for (int n = 2; std::filesystem::exists(path_of(*id)); ++n) id = base + "-" + std::to_string(n);
  }
  std::lock_guard doc_guard(lock_for(*id));
  return write(*id, doc);
}

DocumentStore::Entry DocumentStore::replace(const std::string& id, const CQDocument& doc,
                                            const std::string& expected_revision) {
  return update(id, expected_revision, [&](CQDocument& d) { d = doc; });
}

DocumentStore::Entry DocumentStore::update(const std::string& id, const std::optional<std::string>& expected_revision,
                                           const std::function<void(CQDocument&)>& edit) {
  std::lock_guard guard(lock_for(id));
  auto current = read(id);
  if (expected_revision && *expected_revision != current.revision)
    throw ApiError(ApiErrorCode::StaleRevision, "document \"" + id + "\" was modified",
                   Json{{"currentRevision", current.revision}});
  edit(current.document);
  return write(id, current.document);
}

void DocumentStore::remove(const std::string& id) {
  std::lock_guard guard(lock_for(id));
  if (!std::filesystem::remove(path_of(id))) throw ApiError(ApiErrorCode::UnknownDocument, "no document \"" + id + "\"");
}

// ---------------------------------------------------------------------------
// Service

namespace {

Json entry_json(const DocumentStore::Entry& e) {
  return {{"id", e.id},
          {"revision", e.revision},
          {"document", to_json(e.document)},
          {"warnings", to_json_array(e.warnings)}};
}

Json parse_body(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const Json::parse_error& e) {
    throw ApiError(ApiErrorCode::InvalidPayload, std::string("malformed JSON: ") + e.what());
  }
}

std::optional<std::string> optional_revision(const Json& body) {
  if (!body.contains("revision") || body.at("revision").is_null()) return std::nullopt;
  if (!body.at("revision").is_string()) throw ApiError(ApiErrorCode::InvalidPayload, "revision must be a string");
  return body.at("revision").get<std::string>();
}

bool same_question(std::string_view a, std::string_view b) {
  return text::lower(text::collapse_ws(a)) == text::lower(text::collapse_ws(b));
}

}  // namespace

struct Service::Impl {
  TemplateSet templates;
  TemplateIndex index;
  DocumentStore store;
  ServiceConfig config;
  httplib::Server server;

  Impl(TemplateSet t, ServiceConfig c)
      : templates(std::move(t)), index(templates), store(c.documents_dir, &templates), config(std::move(c)) {
    routes();
  }

  const Template& find_template(const TemplateRef& ref) const {
    const auto* t = templates.find(ref);
    if (!t) throw ApiError(ApiErrorCode::UnknownTemplate, "no template " + ref.str());
    return *t;
  }

  using Handler = std::function<Json(const httplib::Request&, httplib::Response&)>;

  /// Wraps a handler: JSON responses, error mapping.
  httplib::Server::Handler json(Handler h) {
    return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
      try {
        res.status = 200;
        const auto body = h(req, res);
        res.set_content(dump(body), "application/json");
      } catch (const ApiError& e) {
        res.status = http_status(e.code());
        res.set_content(dump(e.to_json()), "application/json");
      } catch (const PayloadError& e) {
        const ApiError err(ApiErrorCode::InvalidPayload, e.what());
        res.status = 400;
        res.set_content(dump(err.to_json()), "application/json");
      } catch (const Json::exception& e) {
        const ApiError err(ApiErrorCode::InvalidPayload, e.what());
        res.status = 400;
        res.set_content(dump(err.to_json()), "application/json");
      } catch (const std::exception& e) {
        const ApiError err(ApiErrorCode::Internal, e.what());
        res.status = 500;
        res.set_content(dump(err.to_json()), "application/json");
      }
    };
  }

  std::string text_field(const Json& body) {
    if (!body.contains("text") || !body.at("text").is_string())
      throw ApiError(ApiErrorCode::InvalidPayload, "field \"text\" (string) is required");
    return body.at("text").get<std::string>();
  }

  CompetencyQuestion question_from_request(const Json& body) {
    CompetencyQuestion q;
    const bool has_template = body.contains("templateId") || body.contains("ref");
    std::optional<std::string> text;
    if (body.contains("text") && !body.at("text").is_null()) text = text_field(body);
    if (has_template) {
      const auto ref = body.contains("ref") ? template_ref_from_json(body.at("ref")) : template_ref_from_json(body);
      const auto& t = find_template(ref);
      const auto bindings = bindings_from_json(body.value("bindings", Json::object()));
      std::string generated;
      try {
        generated = instantiate(t, bindings);
      } catch (const InstantiationError& e) {
        throw ApiError(ApiErrorCode::InstantiationFailed, e.what(), Json{{"ref", ref.str()}});
      }
      if (text && !same_question(*text, generated))
        throw ApiError(ApiErrorCode::InstantiationFailed, "text does not match the instantiated template",
                       Json{{"ref", ref.str()}, {"expected", generated}});
      q.text = text ? *text : generated;
      q.instantiates.push_back({ref, bindings});
    } else {
      // free-form question: template suggestions may be ignored
      if (!text || text::trim(*text).empty())
        throw ApiError(ApiErrorCode::InvalidPayload, "a question needs \"text\" or a template");
      q.text = *text;
    }
    if (body.contains("forOntologies")) {
      for (const auto& o : body.at("forOntologies")) q.for_ontologies.push_back(o.get<std::string>());
    }
    q.created = now_iso8601_utc();
    return q;
  }

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", config.cors_origin},
                                {"Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get("/templates", json([this](auto&, auto&) { return to_json(templates); }));

    server.Get("/suggest", json([this](const httplib::Request& req, auto&) {
                 const auto mode_name = req.has_param("mode") ? req.get_param_value("mode") : "starts-with";
                 const auto mode = parse_suggest_mode(mode_name);
                 if (!mode) throw ApiError(ApiErrorCode::InvalidPayload, "unknown mode \"" + mode_name + "\"");
                 return suggest_response(templates, req.get_param_value("q"), *mode);
               }));

    server.Post("/chunk", json([this](const httplib::Request& req, auto&) {
                  return chunk_response(text_field(parse_body(req)));
                }));

    server.Post("/match", json([this](const httplib::Request& req, auto&) {
                  const auto body = parse_body(req);
                  if (body.contains("chunking")) {
                    if (!body.at("chunking").is_string())
                      throw ApiError(ApiErrorCode::InvalidPayload, "field \"chunking\" must be a string");
                    try {
                      return match_chunking_response(parse_gold_chunking(body.at("chunking").get<std::string>()), index);
                    } catch (const GoldSyntaxError& e) {
                      throw ApiError(ApiErrorCode::InvalidPayload, e.what());
                    }
                  }
                  return match_response(text_field(body), index);
                }));

    server.Post("/lint", json([this](const httplib::Request& req, auto&) {
                  return lint_response(text_field(parse_body(req)));
                }));

    server.Post("/instantiate", json([this](const httplib::Request& req, auto&) {
                  const auto body = parse_body(req);
                  const auto ref = body.contains("ref") ? template_ref_from_json(body.at("ref"))
                                                        : template_ref_from_json(body);
                  const auto& t = find_template(ref);
                  try {
                    return instantiate_response(t, bindings_from_json(body.value("bindings", Json::object())));
                  } catch (const InstantiationError& e) {
                    throw ApiError(ApiErrorCode::InstantiationFailed, e.what(), Json{{"ref", ref.str()}});
                  }
                }));

    server.Get("/documents", json([this](auto&, auto&) {
                 Json out = Json::array();
                 for (const auto& e : store.list())
                   out.push_back({{"id", e.id},
                                  {"revision", e.revision},
                                  {"title", e.document.title},
                                  {"questions", e.document.questions.size()}});
                 return Json{{"documents", std::move(out)}};
               }));

    server.Post("/documents", json([this](const httplib::Request& req, httplib::Response& res) {
                  const auto body = parse_body(req);
                  auto doc = document_from_json(body);
                  if (doc.template_set_version.empty()) doc.template_set_version = templates.version;
                  std::optional<std::string> id;
                  if (body.contains("id") && !body.at("id").is_null()) id = body.at("id").get<std::string>();
                  res.status = 201;
                  return entry_json(store.create(doc, id));
                }));

    server.Get(R"(/documents/([^/]+))", json([this](const httplib::Request& req, auto&) {
                 return entry_json(store.get(req.matches[1]));
               }));

    server.Put(R"(/documents/([^/]+))", json([this](const httplib::Request& req, auto&) {
                 const auto body = parse_body(req);
                 const auto revision = optional_revision(body);
                 if (!revision) throw ApiError(ApiErrorCode::InvalidPayload, "field \"revision\" is required");
                 if (!body.contains("document")) throw ApiError(ApiErrorCode::InvalidPayload, "field \"document\" is required");
                 return entry_json(store.replace(req.matches[1], document_from_json(body.at("document")), *revision));
               }));

    server.Delete(R"(/documents/([^/]+))", json([this](const httplib::Request& req, auto&) {
                    const std::string id = req.matches[1];
                    store.remove(id);
                    return Json{{"deleted", id}};
                  }));

    server.Post(R"(/documents/([^/]+)/questions)", json([this](const httplib::Request& req, httplib::Response& res) {
                  const auto body = parse_body(req);
                  const auto q = question_from_request(body);
                  auto entry = store.update(req.matches[1], optional_revision(body),
                                            [&](CQDocument& d) { d.questions.push_back(q); });
                  res.status = 201;
                  return entry_json(entry);
                }));

    server.Delete(R"(/documents/([^/]+)/questions/(\d+))", json([this](const httplib::Request& req, auto&) {
                    std::optional<std::string> revision;
                    if (req.has_param("revision")) revision = req.get_param_value("revision");
                    const auto n = std::stoul(req.matches[2]);
                    return entry_json(store.update(req.matches[1], revision, [&](CQDocument& d) {
                      if (n >= d.questions.size())
                        throw ApiError(ApiErrorCode::UnknownQuestion, "no question " + std::to_string(n),
                                       Json{{"questions", d.questions.size()}});
                      d.questions.erase(d.questions.begin() + static_cast<std::ptrdiff_t>(n));
                    }));
                  }));

    server.Get(R"(/documents/([^/]+)/export)", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        res.set_content(store.export_xml(req.matches[1]), "application/xml");
      } catch (const ApiError& e) {
        res.status = http_status(e.code());
        res.set_content(dump(e.to_json()), "application/json");
      }
    });
  }
};

Service::Service(TemplateSet templates, ServiceConfig config)
    : impl_(std::make_unique<Impl>(std::move(templates), std::move(config))) {}

Service::~Service() = default;

bool Service::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }
int Service::bind_to_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool Service::listen_after_bind() { return impl_->server.listen_after_bind(); }
void Service::stop() { impl_->server.stop(); }

}  // namespace claro
