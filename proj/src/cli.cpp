#include "claro/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "claro/authoring.hpp"
#include "claro/evaluator.hpp"
#include "claro/json_io.hpp"
#include "claro/matcher.hpp"
#include "claro/service.hpp"
#include "claro/storage.hpp"
#include "claro/template_dsl.hpp"
#include "claro/text_util.hpp"

namespace claro {

namespace {

/// Bad flag combinations found after parsing; reported like CLI11 errors.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Text, Json, Csv };

struct Options {
  std::string templates_path;
  std::string data_dir = CLARO_DATA_DIR;
  Format format = Format::Text;

  // positional / per-command values
  std::string text;
  std::string file;
  std::string output;
  std::string ref;
  std::vector<std::string> binds;
  std::vector<std::string> ontologies;
  std::string title;
  std::string set = "claro";
  std::string host = "127.0.0.1";
  std::string documents = "documents";
  std::size_t index = 0;
  int port = kDefaultPort;
  int max_id = 0;
  bool contains = false;
  bool gold = false;
  bool no_reword = false;
  bool verbose = false;
  bool chunking = false;
  bool base_only = false;
  bool keep_aux = false;
};

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

template <typename... Ts>
std::string csv_row(const Ts&... fields) {
  std::string out;
  ((out += (out.empty() ? "" : ",") + csv_field(fields)), ...);
  return out + "\n";
}

class Runner {
 public:
  Runner(Options& o, std::istream& in, std::ostream& out) : o_(o), in_(in), out_(out) {}

  const TemplateSet& templates() {
    if (!templates_) templates_ = load_template_file(o_.templates_path);
    return *templates_;
  }

  std::string input_text() {
    if (!o_.text.empty() && o_.text != "-") return o_.text;
    std::string line;
    std::getline(in_, line);
    return text::trim(line);
  }

  ChunkerConfig chunker_config() const {
    ChunkerConfig c;
    if (o_.keep_aux) c.aux_policy = AuxPolicy::KeepAsText;
    return c;
  }

  void no_csv(const char* what) {
    if (o_.format == Format::Csv) throw UsageError(std::string("csv output is not available for ") + what);
  }

  int json(const Json& j) {
    out_ << dump(j);
    return kExitOk;
  }

  // -- templates ------------------------------------------------------------

  int templates_validate() {
    no_csv("templates validate");
    const auto v = validate_set(templates());
    if (o_.format == Format::Json) {
      Json violations = Json::array();
      for (const auto& x : v.result.violations) violations.push_back(x.message);
      json({{"ok", v.ok()}, {"base", v.counts.base}, {"variants", v.counts.variants}, {"violations", violations}});
    } else {
      for (const auto& x : v.result.violations) out_ << "violation: " << x.message << '\n';
      out_ << (v.ok() ? "ok: " : "invalid: ") << templates().size() << " templates (" << v.counts.base << " base, "
           << v.counts.variants << " variants)\n";
    }
    return v.ok() ? kExitOk : kExitData;
  }

  int templates_list() {
    const auto& s = templates();
    if (o_.format == Format::Json) return json(to_json(s));
    if (o_.format == Format::Csv) out_ << csv_row(std::string("ref"), std::string("pattern"), std::string("display"),
                                                  std::string("provenance"));
    for (const auto& t : s.templates) {
      if (o_.format == Format::Csv)
        out_ << csv_row(t.ref.str(), template_pattern(t), render_user_friendly(t), std::string(to_string(t.provenance)));
      else
        out_ << std::left << std::setw(5) << t.ref.str() << ' ' << serialize_template(t).substr(t.ref.str().size() + 1)
             << '\n';
    }
    return kExitOk;
  }

  int templates_stats() {
    no_csv("templates stats");
    const auto& s = templates();
    const auto v = validate_set(s);
    const auto st = structural_stats(s);
    std::map<std::string, int> provenance;
    for (const auto& t : s.templates) ++provenance[std::string(to_string(t.provenance))];
    if (o_.format == Format::Json)
      return json({{"templates", s.size()},
                   {"base", v.counts.base},
                   {"variants", v.counts.variants},
                   {"maxEcVariables", st.max_ec_vars},
                   {"maxPcVariables", st.max_pc_vars},
                   {"maxVariables", st.max_total_vars},
                   {"maxSlotOccurrences", st.max_slot_occurrences},
                   {"maxPcParts", st.max_pc_split},
                   {"templatesWithEc", st.templates_with_ec},
                   {"provenance", provenance}});
    out_ << s.size() << " templates: " << v.counts.base << " base + " << v.counts.variants << " variants\n"
         << "max EC variables:     " << st.max_ec_vars << '\n'
         << "max PC variables:     " << st.max_pc_vars << '\n'
         << "max variables:        " << st.max_total_vars << '\n'
         << "max slot occurrences: " << st.max_slot_occurrences << '\n'
         << "max parts per PC:     " << st.max_pc_split << '\n'
         << "templates with an EC: " << st.templates_with_ec << '\n';
    for (const auto& [name, n] : provenance) out_ << "provenance " << name << ": " << n << '\n';
    return kExitOk;
  }

  int templates_fragments() {
    TemplateSet s;
    for (const auto& t : templates().templates) {
      if (o_.base_only && t.is_variant()) continue;
      if (o_.max_id > 0 && t.ref.id > o_.max_id) continue;
      s.templates.push_back(t);
    }
    const auto pairs = fragment_analysis(s);
    const auto frags = distinct_fragments(pairs);
    if (o_.format == Format::Json) {
      Json p = Json::array();
      for (const auto& x : pairs) p.push_back({{"fragment", x.fragment.str()}, {"container", x.container.str()}});
      Json f = Json::array();
      for (const auto& r : frags) f.push_back(r.str());
      return json({{"templates", s.size()}, {"fragments", f}, {"pairs", p}});
    }
    if (o_.format == Format::Csv) {
      out_ << csv_row(std::string("fragment"), std::string("container"));
      for (const auto& x : pairs) out_ << csv_row(x.fragment.str(), x.container.str());
      return kExitOk;
    }
    for (const auto& x : pairs) out_ << x.fragment.str() << " is a fragment of " << x.container.str() << '\n';
    out_ << frags.size() << " of " << s.size() << " templates are fragments of others\n";
    return kExitOk;
  }

  // -- single-question commands --------------------------------------------

  int chunk_cmd() {
    no_csv("chunk");
    const auto text = input_text();
    if (o_.format == Format::Json) return json(chunk_response(text, chunker_config()));
    for (const auto& c : chunk(text, chunker_config()))
      out_ << c.rank << ". " << pattern_string(c) << "\n   " << format_gold_chunking(c) << '\n';
    return kExitOk;
  }

  int match_cmd() {
    const auto text = input_text();
    const TemplateIndex index(templates());
    Json j = o_.chunking ? match_chunking_response(parse_gold_chunking(text), index)
                         : match_response(text, index, chunker_config());
    if (o_.format == Format::Json) return json(j);
    if (o_.format == Format::Csv) out_ << csv_row(std::string("ref"), std::string("exactness"), std::string("pattern"));
    for (const auto& m : j["matches"]) {
      const std::string ref = m["ref"], ex = m["exactness"], pat = m["pattern"];
      if (o_.format == Format::Csv) {
        out_ << csv_row(ref, ex, pat);
        continue;
      }
      out_ << ref << " (" << ex << ") " << pat;
      for (const auto& [slot, parts] : m["bindings"].items()) {
        out_ << "  " << slot << '=';
        for (std::size_t i = 0; i < parts.size(); ++i) out_ << (i ? "|" : "") << parts[i].get<std::string>();
      }
      out_ << '\n';
    }
    if (o_.format == Format::Text && j["matches"].empty()) out_ << "no matching template\n";
    return kExitOk;
  }

  int suggest_cmd() {
    const auto mode = o_.contains ? SuggestMode::Contains : SuggestMode::StartsWith;
    const auto ss = suggest(o_.text, mode, templates());
    if (o_.format == Format::Json) return json(suggest_response(templates(), o_.text, mode));
    if (o_.format == Format::Csv) out_ << csv_row(std::string("ref"), std::string("display"), std::string("hit"));
    for (const auto& s : ss) {
      if (o_.format == Format::Csv) out_ << csv_row(s.ref.str(), s.display, std::string(to_string(s.hit)));
      else out_ << std::left << std::setw(5) << s.ref.str() << ' ' << s.display << '\n';
    }
    return kExitOk;
  }

  int lint_cmd() {
    no_csv("lint");
    const auto text = input_text();
    if (o_.format == Format::Json) return json(lint_response(text));
    const auto findings = lint(text);
    for (const auto& f : findings) {
      out_ << to_string(f.kind) << " [" << f.begin << ',' << f.end << "): " << f.message << '\n';
      if (f.rewrite) out_ << "  suggestion: " << *f.rewrite << '\n';
      for (const auto& s : f.splits) out_ << "  part: " << s << '\n';
    }
    const auto guess = classify_validity(text);
    out_ << "validity: " << to_string(guess.validity) << " (confidence " << guess.confidence << ")\n";
    return kExitOk;
  }

  Bindings parse_binds() const {
    Bindings b;
    for (const auto& bind : o_.binds) {
      const auto eq = bind.find('=');
      const auto slot = eq == std::string::npos ? std::nullopt : parse_slot(bind.substr(0, eq));
      if (!slot) throw UsageError("--bind expects SLOT=phrase, got \"" + bind + "\"");
      b[*slot].push_back(bind.substr(eq + 1));
    }
    return b;
  }

  const Template& find_template(const std::string& ref_text) {
    const auto ref = parse_template_ref(ref_text);
    if (!ref) throw UsageError("bad template reference \"" + ref_text + "\"");
    const auto* t = templates().find(*ref);
    if (!t) throw std::runtime_error("no template " + ref_text);
    return *t;
  }

  int instantiate_cmd() {
    no_csv("instantiate");
    const auto& t = find_template(o_.ref);
    const auto j = instantiate_response(t, parse_binds());
    if (o_.format == Format::Json) return json(j);
    out_ << j["text"].get<std::string>() << '\n';
    return kExitOk;
  }

  // -- corpus commands -----------------------------------------------------

  std::filesystem::path fixture_path(const std::string& name) const {
    static const std::map<std::string, std::string> known{
        {"seta", "fixtures/set_a.txt"}, {"setb", "fixtures/set_b.txt"}, {"setc", "fixtures/set_c.txt"},
        {"corpus", "corpus/training_corpus.txt"}};
    const auto it = known.find(text::lower(name));
    if (it != known.end()) return std::filesystem::path(o_.data_dir) / it->second;
    return name;
  }

  ComparisonTemplateSet comparison_set(TemplateSetName n) {
    switch (n) {
      case TemplateSetName::CLaRO: return {n, templates(), {}};
      case TemplateSetName::Ren:
        return load_comparison_set(n, std::filesystem::path(o_.data_dir) / "comparison/ren_templates.txt");
      case TemplateSetName::Bezerra:
        return load_comparison_set(n, std::filesystem::path(o_.data_dir) / "comparison/bezerra_templates.txt");
    }
    return {n, templates(), {}};
  }

  EvaluateOptions evaluate_options() const {
    EvaluateOptions e;
    e.use_gold = o_.gold;
    e.allow_rewording = !o_.no_reword;
    e.chunker = chunker_config();
    return e;
  }

  int coverage_cmd() {
    std::vector<ComparisonTemplateSet> sets;
    if (o_.set == "all") {
      for (const auto n : {TemplateSetName::CLaRO, TemplateSetName::Ren, TemplateSetName::Bezerra})
        sets.push_back(comparison_set(n));
    } else {
      const auto n = parse_template_set_name(o_.set);
      if (!n) throw UsageError("unknown template set \"" + o_.set + "\" (claro, ren, bezerra, all)");
      sets.push_back(comparison_set(*n));
    }

    if (text::lower(o_.file) == "table") {
      const auto table = compare({{"SetA", load_fixture(fixture_path("setA"))},
                                  {"SetB", load_fixture(fixture_path("setB"))},
                                  {"SetC", load_fixture(fixture_path("setC"))}},
                                 sets, evaluate_options());
      if (o_.format == Format::Json) return json(to_json(table));
      out_ << (o_.format == Format::Csv ? format_table_csv(table) : format_table(table));
      return kExitOk;
    }

    const auto corpus = load_fixture(fixture_path(o_.file));
    std::vector<CoverageReport> reports;
    for (const auto& s : sets) reports.push_back(evaluate(corpus, s, evaluate_options()));
    if (o_.format == Format::Json) {
      if (reports.size() == 1) return json(to_json(reports.front()));
      return json({{"reports", to_json_array(reports)}});
    }
    if (o_.format == Format::Csv) {
      out_ << csv_row(std::string("set"), std::string("id"), std::string("outcome"), std::string("matched"));
      for (const auto& r : reports)
        for (const auto& o : r.outcomes) {
          std::string refs;
          for (const auto& m : o.matched) refs += (refs.empty() ? "" : " ") + m.str();
          out_ << csv_row(r.set_name, o.id, std::string(to_string(o.outcome)), refs);
        }
      return kExitOk;
    }
    for (const auto& r : reports) {
      if (reports.size() > 1) out_ << r.set_name << ": ";
      out_ << r.matched << '/' << r.valid << " valid matched (" << r.percent_rounded() << "%)\n";
      if (!o_.verbose) continue;
      for (const auto& o : r.outcomes) {
        out_ << "  " << std::left << std::setw(16) << o.id << std::setw(15) << to_string(o.outcome);
        for (const auto& m : o.matched) out_ << ' ' << m.str();
        if (!o.agrees_with_gold) out_ << "  (disagrees with gold)";
        out_ << '\n';
      }
    }
    return kExitOk;
  }

  int mine_cmd() {
    const auto corpus = load_fixture(fixture_path(o_.file));
    const auto patterns = mine_patterns(mining_input(corpus));
    if (o_.format == Format::Json) return json({{"cqs", corpus.size()}, {"patterns", patterns}});
    if (o_.format == Format::Csv) {
      out_ << csv_row(std::string("pattern"));
      for (const auto& p : patterns) out_ << csv_row(p);
      return kExitOk;
    }
    for (const auto& p : patterns) out_ << p << '\n';
    out_ << patterns.size() << " patterns from " << corpus.size() << " CQs\n";
    return kExitOk;
  }

  // -- documents -------------------------------------------------------------

  int print_document(const LoadResult& r) {
    if (o_.format == Format::Json)
      return json({{"document", to_json(r.document)}, {"warnings", to_json_array(r.warnings)}});
    no_csv("doc");
    out_ << r.document.title << " (" << r.document.template_set_name << ' ' << r.document.template_set_version
         << ")\n";
    for (std::size_t i = 0; i < r.document.questions.size(); ++i) {
      const auto& q = r.document.questions[i];
      out_ << std::setw(3) << i + 1 << ". " << q.text;
      for (const auto& inst : q.instantiates) out_ << "  [" << inst.ref.str() << ']';
      out_ << '\n';
    }
    for (const auto& w : r.warnings) out_ << "warning: " << w.path << ": " << w.message << '\n';
    return kExitOk;
  }

  int doc_new() {
    if (std::filesystem::exists(o_.file)) throw UsageError(o_.file + " already exists");
    CQDocument d{o_.title, "CLaRO", templates().version, {}};
    save_document_file(o_.file, d);
    return print_document({d, {}});
  }

  int doc_add() {
    auto r = load_document_file(o_.file, &templates());
    CompetencyQuestion q;
    if (!o_.ref.empty()) {
      const auto& t = find_template(o_.ref);
      const auto bindings = parse_binds();
      const auto generated = instantiate(t, bindings);
      if (!o_.text.empty() && text::lower(text::collapse_ws(o_.text)) != text::lower(text::collapse_ws(generated)))
        throw std::runtime_error("text does not match template " + o_.ref + ": expected \"" + generated + "\"");
      q.text = o_.text.empty() ? generated : o_.text;
      q.instantiates.push_back({t.ref, bindings});
    } else {
      if (o_.text.empty()) throw UsageError("doc add needs a question text or --template");
      q.text = o_.text;
    }
    q.for_ontologies = o_.ontologies;
    q.created = now_iso8601_utc();
    r.document.questions.push_back(q);
    save_document_file(o_.file, r.document);
    return print_document(load_document_file(o_.file, &templates()));
  }

  int doc_remove() {
    auto r = load_document_file(o_.file, &templates());
    if (o_.index < 1 || o_.index > r.document.questions.size())
      throw UsageError("no question " + std::to_string(o_.index) + " (the document has " +
                       std::to_string(r.document.questions.size()) + ")");
    r.document.questions.erase(r.document.questions.begin() + static_cast<std::ptrdiff_t>(o_.index - 1));
    save_document_file(o_.file, r.document);
    return print_document(load_document_file(o_.file, &templates()));
  }

  int doc_save() {
    const auto r = load_document_file(o_.file, &templates());
    save_document_file(o_.output, r.document);
    return print_document(r);
  }

  int doc_load() { return print_document(load_document_file(o_.file, &templates())); }

  int serve() {
    Service service(templates(), ServiceConfig{o_.documents, "*"});
    out_ << "serving " << templates().size() << " templates on http://" << o_.host << ':' << o_.port << '\n'
         << std::flush;
    return service.listen(o_.host, o_.port) ? kExitOk : kExitData;
  }

 private:
  Options& o_;
  std::istream& in_;
  std::ostream& out_;
  std::optional<TemplateSet> templates_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  if (const char* env = std::getenv("CLARO_TEMPLATES")) o.templates_path = env;
  else o.templates_path = std::string(CLARO_DATA_DIR) + "/claro_templates.txt";

  CLI::App app{"Competency question templates: chunking, matching, authoring and coverage", "claro"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  app.add_option("--templates", o.templates_path, "Template file (default: shipped set, or $CLARO_TEMPLATES)");
  app.add_option("--data-dir", o.data_dir, "Directory holding fixtures and comparison sets");
  const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};
  app.add_option("--format", o.format, "Output format: text, json or csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_flag("--keep-aux", o.keep_aux, "Chunker: keep auxiliaries as text (no alternative reading)");

  Runner runner(o, in, out);
  std::function<int()> action;
  const auto on = [&](CLI::App* sub, std::function<int()> f) { sub->callback([&action, f] { action = f; }); };

  auto* templates = app.add_subcommand("templates", "Inspect the template set");
  templates->require_subcommand(1);
  on(templates->add_subcommand("validate", "Check every template against the structural bounds"),
     [&] { return runner.templates_validate(); });
  on(templates->add_subcommand("list", "List templates"), [&] { return runner.templates_list(); });
  on(templates->add_subcommand("stats", "Counts and structural maxima"), [&] { return runner.templates_stats(); });
  auto* fragments = templates->add_subcommand("fragments", "Templates that are initial segments of others");
  fragments->add_flag("--base-only", o.base_only, "Ignore variants");
  fragments->add_option("--max-id", o.max_id, "Ignore templates with a larger id");
  on(fragments, [&] { return runner.templates_fragments(); });

  auto* chunk = app.add_subcommand("chunk", "Chunk a question into entity and predicate chunks");
  chunk->add_option("text", o.text, "Question text ('-' or omitted: read a line from stdin)");
  on(chunk, [&] { return runner.chunk_cmd(); });

  auto* match = app.add_subcommand("match", "Find the templates a question fits");
  match->add_option("text", o.text, "Question text ('-' or omitted: read a line from stdin)");
  match->add_flag("--chunking", o.chunking, "The text is a manual chunking: Which (pizzas)[EC1] ...");
  on(match, [&] { return runner.match_cmd(); });

  auto* suggest = app.add_subcommand("suggest", "Autocomplete templates from typed text");
  suggest->add_option("prefix", o.text, "Typed text")->required();
  suggest->add_flag("--contains", o.contains, "Match anywhere, not only at the start");
  on(suggest, [&] { return runner.suggest_cmd(); });

  auto* lint = app.add_subcommand("lint", "Flag question forms that are not valid CQs");
  lint->add_option("text", o.text, "Question text ('-' or omitted: read a line from stdin)");
  on(lint, [&] { return runner.lint_cmd(); });

  auto* instantiate = app.add_subcommand("instantiate", "Fill a template's slots");
  instantiate->add_option("template", o.ref, "Template id, e.g. 81 or 70a")->required();
  instantiate->add_option("--bind", o.binds, "SLOT=phrase; repeat a PC for each part");
  on(instantiate, [&] { return runner.instantiate_cmd(); });

  auto* coverage = app.add_subcommand("coverage", "Template coverage of an evaluation set");
  coverage->add_option("fixture", o.file, "setA, setB, setC, corpus, table, or a fixture file")->required();
  coverage->add_option("--set", o.set, "claro, ren, bezerra or all");
  coverage->add_flag("--gold", o.gold, "Use the manual chunkings instead of the chunker");
  coverage->add_flag("--no-reword", o.no_reword, "Do not fall back to the recorded rewordings");
  coverage->add_flag("-v,--verbose", o.verbose, "List the outcome of every question");
  on(coverage, [&] { return runner.coverage_cmd(); });

  auto* mine = app.add_subcommand("mine", "Mine template patterns from a gold-chunked corpus");
  mine->add_option("corpus", o.file, "corpus or a fixture file")->required();
  on(mine, [&] { return runner.mine_cmd(); });

  auto* doc = app.add_subcommand("doc", "Edit a CQ document (.cqd.xml)");
  doc->require_subcommand(1);
  auto* doc_new = doc->add_subcommand("new", "Create an empty document");
  doc_new->add_option("file", o.file)->required();
  doc_new->add_option("--title", o.title, "Document title")->required();
  on(doc_new, [&] { return runner.doc_new(); });
  auto* doc_add = doc->add_subcommand("add", "Append a question, free-form or from a template");
  doc_add->add_option("file", o.file)->required();
  doc_add->add_option("text", o.text, "Question text (optional with --template)");
  doc_add->add_option("--template", o.ref, "Template the question instantiates");
  doc_add->add_option("--bind", o.binds, "SLOT=phrase");
  doc_add->add_option("--ontology", o.ontologies, "Ontology the question is for");
  on(doc_add, [&] { return runner.doc_add(); });
  auto* doc_list = doc->add_subcommand("list", "List the questions");
  doc_list->add_option("file", o.file)->required();
  on(doc_list, [&] { return runner.doc_load(); });
  auto* doc_remove = doc->add_subcommand("remove", "Delete a question by its number in `doc list`");
  doc_remove->add_option("file", o.file)->required();
  doc_remove->add_option("number", o.index)->required();
  on(doc_remove, [&] { return runner.doc_remove(); });
  auto* doc_save = doc->add_subcommand("save", "Validate and write a canonical copy");
  doc_save->add_option("file", o.file)->required()->check(CLI::ExistingFile);
  doc_save->add_option("output", o.output)->required();
  on(doc_save, [&] { return runner.doc_save(); });
  auto* doc_load = doc->add_subcommand("load", "Load, validate against the templates and print");
  doc_load->add_option("file", o.file)->required();
  on(doc_load, [&] { return runner.doc_load(); });

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--port", o.port, "Port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", o.host, "Address to bind");
  serve->add_option("--documents", o.documents, "Directory for .cqd.xml documents");
  on(serve, [&] { return runner.serve(); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TemplateFileError& e) {
    for (const auto& x : e.errors()) err << "error: " << x << '\n';
    return kExitData;
  } catch (const FixtureError& e) {
    err << "error: line " << e.line() << ": " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace claro
