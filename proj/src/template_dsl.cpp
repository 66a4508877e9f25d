#include "claro/template_dsl.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "claro/pattern.hpp"

namespace claro {

TemplateFileError::TemplateFileError(std::vector<std::string> errors)
    : std::runtime_error(errors.empty() ? std::string("template file error")
                                        : errors.front() +
                                              (errors.size() > 1
                                                   ? " (+" + std::to_string(errors.size() - 1) + " more)"
                                                   : std::string())),
      errors_(std::move(errors)) {}

namespace {

struct MarkerKey {
  std::string name;
  int occurrence;  // distinguishes unnumbered markers
  auto operator<=>(const MarkerKey&) const = default;
};

void push_text(std::vector<Segment>& segments, std::string text) {
  if (text.empty()) return;
  if (!segments.empty())
    if (auto* prev = std::get_if<TextSegment>(&segments.back())) {
      prev->content += text;
      return;
    }
  segments.push_back(TextSegment{std::move(text)});
}

}  // namespace

Template parse_template_line(const TemplateSourceLine& line, const DslOptions& options) {
  const std::string_view raw = line.raw;
  const auto fail = [&](const std::string& msg, std::size_t col) -> ParseError {
    return ParseError("line " + std::to_string(line.line_number) + ":" + std::to_string(col + 1) + ": " + msg,
                      line.line_number, col);
  };

  std::size_t pos = 0;
  while (pos < raw.size() && std::isdigit(static_cast<unsigned char>(raw[pos]))) ++pos;
  if (pos == 0) throw fail("missing id prefix", 0);
  Template t;
  t.ref.id = std::stoi(std::string(raw.substr(0, pos)));
  if (t.ref.id < 1) throw fail("template id must be >= 1", 0);
  if (pos < raw.size() && std::islower(static_cast<unsigned char>(raw[pos]))) t.ref.variant = raw[pos++];
  if (pos >= raw.size() || raw[pos] != '.') throw fail("expected '.' after id", pos);
  ++pos;

  std::string_view body = raw.substr(pos);
  const std::size_t body_offset = pos;
  while (!body.empty() && (body.back() == ' ' || body.back() == '\r' || body.back() == '\t')) body.remove_suffix(1);
  if (body.ends_with('*')) {
    t.provenance = Provenance::PostEvaluation;
    body.remove_suffix(1);
  }
  if (body.empty()) throw fail("empty template body", body_offset);

  std::map<MarkerKey, Slot> renumbered;
  std::map<std::string, int> unnumbered_seen;
  int next_index[2] = {1, 1};

  std::string text;
  for (std::size_t i = 0; i < body.size();) {
    if (body[i] != '[') {
      text.push_back(body[i++]);
      continue;
    }
    const auto close = body.find(']', i);
    if (close == std::string_view::npos) throw fail("unterminated slot marker", body_offset + i);
    const auto marker = body.substr(i + 1, close - i - 1);
    push_text(t.segments, std::move(text));
    text.clear();

    if (!options.lenient) {
      auto slot = parse_slot(marker);
      if (!slot) {
        if ((marker.starts_with("EC") || marker.starts_with("PC")) && marker.size() > 2 &&
            std::all_of(marker.begin() + 2, marker.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          throw fail("slot index must be >= 1", body_offset + i);
        throw fail("malformed slot marker [" + std::string(marker) + "]", body_offset + i);
      }
      t.segments.push_back(*slot);
    } else {
      std::size_t digits = marker.size();
      while (digits > 0 && std::isdigit(static_cast<unsigned char>(marker[digits - 1]))) --digits;
      const std::string name(marker.substr(0, digits));
      const auto alias = options.aliases.find(name);
      if (alias == options.aliases.end()) throw fail("unknown slot marker [" + std::string(marker) + "]", body_offset + i);
      MarkerKey key{std::string(marker), 0};
      if (digits == marker.size()) key.occurrence = ++unnumbered_seen[name];
      auto it = renumbered.find(key);
      if (it == renumbered.end()) {
        const auto kind = alias->second;
        it = renumbered.emplace(key, Slot{kind, next_index[kind == SlotKind::EC ? 0 : 1]++}).first;
      }
      t.segments.push_back(it->second);
    }
    i = close + 1;
  }
  push_text(t.segments, std::move(text));

  if (!options.lenient) {
    const auto* last = std::get_if<TextSegment>(&t.segments.back());
    if (last == nullptr || last->content.back() != '?') throw fail("missing '?'", raw.size());
  }
  return t;
}

TemplateSet parse_template_file(std::string_view contents, const DslOptions& options) {
  TemplateSet set;
  std::vector<std::string> errors;
  Provenance block = Provenance::DatasetDerived;

  std::size_t line_no = 0;
  std::istringstream in{std::string(contents)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line.compare(first, 2, "#!") == 0) {
      std::istringstream directive(line.substr(first + 2));
      std::string key;
      std::string value;
      directive >> key;
      std::getline(directive >> std::ws, value);
      if (key == "name") {
        set.name = value;
      } else if (key == "version") {
        set.version = value;
      } else if (key == "provenance") {
        if (value == "negation-extension") block = Provenance::NegationExtension;
        else if (value == "corrected") block = Provenance::Corrected;
        else if (value == "default") block = Provenance::DatasetDerived;
        else errors.push_back("line " + std::to_string(line_no) + ": unknown provenance '" + value + "'");
      } else {
        errors.push_back("line " + std::to_string(line_no) + ": unknown directive '" + key + "'");
      }
      continue;
    }
    if (line[first] == '#') continue;
    try {
      auto t = parse_template_line({line.substr(first), line_no}, options);
      if (t.provenance == Provenance::DatasetDerived) t.provenance = block;
      set.templates.push_back(std::move(t));
    } catch (const ParseError& e) {
      errors.emplace_back(e.what());
    }
  }

  if (errors.empty() && !options.lenient) {
    for (const auto& v : validate_set(set).result.violations) errors.push_back(v.message);
  }
  if (!errors.empty()) throw TemplateFileError(std::move(errors));
  return set;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TemplateSet load_template_file(const std::filesystem::path& path, const DslOptions& options) {
  return parse_template_file(read_file(path), options);
}

std::string serialize_template(const Template& t) {
  std::string out = t.ref.str() + ".";
  for (const auto& seg : t.segments) {
    if (const auto* text = std::get_if<TextSegment>(&seg))
      out += text->content;
    else
      out += "[" + std::get<Slot>(seg).str() + "]";
  }
  if (t.provenance == Provenance::PostEvaluation) out.push_back('*');
  return out;
}

std::string template_pattern(const Template& t) { return to_string(pattern_of(t)); }

}  // namespace claro
