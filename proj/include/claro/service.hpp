#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "claro/json_io.hpp"
#include "claro/matcher.hpp"
#include "claro/storage.hpp"
#include "claro/template_model.hpp"

namespace claro {

/// The published error codes, with their HTTP status.
enum class ApiErrorCode {
  InvalidPayload,       // 400
  InstantiationFailed,  // 400
  UnknownTemplate,      // 404
  UnknownDocument,      // 404
  UnknownQuestion,      // 404
  StaleRevision,        // 409
  Internal,             // 500
};

std::string_view to_string(ApiErrorCode c);
int http_status(ApiErrorCode c);

class ApiError : public std::runtime_error {
 public:
  ApiError(ApiErrorCode code, const std::string& message, Json detail = nullptr)
      : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}
  ApiErrorCode code() const { return code_; }
  const Json& detail() const { return detail_; }
  Json to_json() const;

 private:
  ApiErrorCode code_;
  Json detail_;
};

/// 64-bit FNV-1a of the stored XML, as 16 hex digits.
std::string revision_of(std::string_view content);

/// Letters, digits, '-' and '_', at most 64 characters, not starting with '-'.
bool is_valid_document_id(std::string_view id);

/// CQ documents as <id>.cqd.xml files in one directory. Writes to a document
/// are serialized and checked against the revision the caller last saw.
class DocumentStore {
 public:
  struct Entry {
    std::string id;
    std::string revision;
    CQDocument document;
    std::vector<LoadWarning> warnings;
  };

  DocumentStore(std::filesystem::path dir, const TemplateSet* templates);

  std::vector<Entry> list() const;
  Entry get(const std::string& id) const;
  std::string export_xml(const std::string& id) const;
  /// Without an id, one is derived from the title.
  Entry create(const CQDocument& doc, std::optional<std::string> id = std::nullopt);
  Entry replace(const std::string& id, const CQDocument& doc, const std::string& expected_revision);
  /// Applies `edit` under the document lock; a given revision must be current.
  Entry update(const std::string& id, const std::optional<std::string>& expected_revision,
               const std::function<void(CQDocument&)>& edit);
  void remove(const std::string& id);

 private:
  std::filesystem::path path_of(const std::string& id) const;
  std::mutex& lock_for(const std::string& id);
  Entry read(const std::string& id) const;
  Entry write(const std::string& id, const CQDocument& doc);

  std::filesystem::path dir_;
  const TemplateSet* templates_;
  std::mutex locks_mutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> locks_;
};

struct ServiceConfig {
  std::filesystem::path documents_dir = "documents";
  std::string cors_origin = "*";
};

inline constexpr int kDefaultPort = 8642;

/// HTTP+JSON API over a template set and a document store.
class Service {
 public:
  Service(TemplateSet templates, ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Blocks until stop().
  bool listen(const std::string& host, int port);
  /// Binds to a free port and returns it; serve with listen_after_bind().
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace claro
