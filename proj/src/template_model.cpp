#include "claro/template_model.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

namespace claro {

std::string Slot::str() const {
  return (kind == SlotKind::EC ? "EC" : "PC") + std::to_string(index);
}

std::optional<Slot> parse_slot(std::string_view token) {
  if (token.size() < 3) return std::nullopt;
  Slot slot;
  if (token.starts_with("EC")) {
    slot.kind = SlotKind::EC;
  } else if (token.starts_with("PC")) {
    slot.kind = SlotKind::PC;
  } else {
    return std::nullopt;
  }
  auto digits = token.substr(2);
  if (digits.empty() || digits.front() == '0') return std::nullopt;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), slot.index);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return slot;
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::DatasetDerived: return "dataset-derived";
    case Provenance::NegationExtension: return "negation-extension";
    case Provenance::PostEvaluation: return "post-evaluation";
    case Provenance::Corrected: return "corrected";
  }
  return "dataset-derived";
}

std::string TemplateRef::str() const {
  auto s = std::to_string(id);
  if (variant) s.push_back(*variant);
  return s;
}

std::optional<TemplateRef> parse_template_ref(std::string_view s) {
  TemplateRef ref;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), ref.id);
  if (ec != std::errc{} || ref.id < 1) return std::nullopt;
  auto rest = s.substr(static_cast<std::size_t>(ptr - s.data()));
  if (rest.empty()) return ref;
  if (rest.size() == 1 && rest[0] >= 'a' && rest[0] <= 'z') {
    ref.variant = rest[0];
    return ref;
  }
  return std::nullopt;
}

std::vector<Slot> Template::slot_occurrences() const {
  std::vector<Slot> out;
  for (const auto& seg : segments)
    if (const auto* slot = std::get_if<Slot>(&seg)) out.push_back(*slot);
  return out;
}

std::vector<Slot> Template::distinct_slots() const {
  std::vector<Slot> out;
  for (const auto& slot : slot_occurrences())
    if (std::find(out.begin(), out.end(), slot) == out.end()) out.push_back(slot);
  return out;
}

const Template* TemplateSet::find(const TemplateRef& ref) const {
  for (const auto& t : templates)
    if (t.ref == ref) return &t;
  return nullptr;
}

namespace {

bool has_slot_marker(std::string_view text) {
  for (std::size_t pos = text.find('['); pos != std::string_view::npos; pos = text.find('[', pos + 1)) {
    auto rest = text.substr(pos + 1);
    if (rest.starts_with("EC") || rest.starts_with("PC")) return true;
  }
  return false;
}

}  // namespace

ValidationResult validate_template(const Template& t) {
  ValidationResult r;
  auto add = [&](std::string msg, std::optional<std::size_t> pos = std::nullopt) {
    r.violations.push_back({std::move(msg), pos});
  };

  if (t.ref.id < 1) add("template id must be positive");
  if (t.segments.empty()) {
    add("template has no segments");
    return r;
  }

  for (std::size_t i = 0; i < t.segments.size(); ++i) {
    if (const auto* text = std::get_if<TextSegment>(&t.segments[i])) {
      if (text->content.empty()) add("empty text segment", i);
      if (has_slot_marker(text->content)) add("text segment contains a slot marker", i);
    } else {
      const auto& slot = std::get<Slot>(t.segments[i]);
      if (slot.index < 1) add("slot index must be >= 1", i);
    }
  }

  const auto* last = std::get_if<TextSegment>(&t.segments.back());
  if (last == nullptr || last->content.empty() || last->content.back() != '?')
    add("missing terminal question mark", t.segments.size() - 1);

  // Occurrence counts and first-appearance order per kind.
  std::map<Slot, int> occurrences;
  int next_ec = 1;
  int next_pc = 1;
  for (std::size_t i = 0; i < t.segments.size(); ++i) {
    const auto* slot = std::get_if<Slot>(&t.segments[i]);
    if (slot == nullptr) continue;
    if (occurrences[*slot]++ == 0) {
      int& expected = slot->kind == SlotKind::EC ? next_ec : next_pc;
      if (slot->index != expected)
        add(slot->str() + " appears before " + (slot->kind == SlotKind::EC ? "EC" : "PC") +
                std::to_string(expected),
            i);
      else
        ++expected;
    }
  }

  int ec_vars = 0;
  int pc_vars = 0;
  int total_occurrences = 0;
  for (const auto& [slot, count] : occurrences) {
    total_occurrences += count;
    if (slot.kind == SlotKind::EC) {
      ++ec_vars;
    } else {
      ++pc_vars;
      if (count > kMaxPcParts)
        add(slot.str() + " is split into more than " + std::to_string(kMaxPcParts) + " parts");
    }
  }

  if (ec_vars == 0) add("no EC slot");
  if (ec_vars > kMaxEcVariables) add("more than 4 EC variables");
  if (pc_vars > kMaxPcVariables) add("more than 2 PC variables");
  if (ec_vars + pc_vars > kMaxVariables) add("more than 5 variables");
  if (total_occurrences > kMaxSlotOccurrences) add("more than 6 slot occurrences");
  return r;
}

SetValidation validate_set(const TemplateSet& s) {
  SetValidation v;
  std::set<TemplateRef> seen;
  std::set<int> base_ids;
  for (const auto& t : s.templates)
    if (!t.ref.variant) base_ids.insert(t.ref.id);

  for (const auto& t : s.templates) {
    for (auto& violation : validate_template(t).violations)
      v.result.violations.push_back({"template " + t.ref.str() + ": " + violation.message, violation.segment});
    if (!seen.insert(t.ref).second)
      v.result.violations.push_back(
          {"duplicate id (" + std::to_string(t.ref.id) + ", " +
               (t.ref.variant ? std::string(1, *t.ref.variant) : std::string("none")) + ")",
           std::nullopt});
    if (t.ref.variant) {
      ++v.counts.variants;
      if (!base_ids.contains(t.ref.id))
        v.result.violations.push_back({"orphan variant " + t.ref.str(), std::nullopt});
    } else {
      ++v.counts.base;
    }
  }
  return v;
}

StructuralStats structural_stats(const TemplateSet& s) {
  StructuralStats st;
  st.template_count = s.templates.size();
  for (const auto& t : s.templates) {
    std::map<Slot, int> occurrences;
    for (const auto& slot : t.slot_occurrences()) ++occurrences[slot];
    int ec = 0;
    int pc = 0;
    int total = 0;
    for (const auto& [slot, count] : occurrences) {
      total += count;
      if (slot.kind == SlotKind::EC) {
        ++ec;
      } else {
        ++pc;
        st.max_pc_split = std::max(st.max_pc_split, count);
      }
    }
    st.max_ec_vars = std::max(st.max_ec_vars, ec);
    st.max_pc_vars = std::max(st.max_pc_vars, pc);
    st.max_total_vars = std::max(st.max_total_vars, ec + pc);
    st.max_slot_occurrences = std::max(st.max_slot_occurrences, total);
    if (ec > 0) ++st.templates_with_ec;
  }
  return st;
}

}  // namespace claro
