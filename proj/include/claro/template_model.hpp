#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace claro {

enum class SlotKind { EC, PC };

/// A numbered slot: EC1, PC2, ...
struct Slot {
  SlotKind kind = SlotKind::EC;
  int index = 1;

  auto operator<=>(const Slot&) const = default;
  std::string str() const;
};

/// Parses "EC1" / "PC2". Returns nullopt for anything else (including index 0).
std::optional<Slot> parse_slot(std::string_view token);

struct TextSegment {
  std::string content;
  bool operator==(const TextSegment&) const = default;
};

using Segment = std::variant<TextSegment, Slot>;

enum class Provenance {
  DatasetDerived,
  NegationExtension,
  PostEvaluation,
  // Comparison sets only: a published template repaired into grammatical English.
  Corrected,
};

std::string_view to_string(Provenance p);

/// (id, optional variant letter), e.g. 22 / 22a.
struct TemplateRef {
  int id = 0;
  std::optional<char> variant;

  auto operator<=>(const TemplateRef&) const = default;
  std::string str() const;
};

/// Parses "81", "70a". Returns nullopt on malformed input.
std::optional<TemplateRef> parse_template_ref(std::string_view s);

struct Template {
  TemplateRef ref;
  std::vector<Segment> segments;
  Provenance provenance = Provenance::DatasetDerived;

  bool operator==(const Template&) const = default;

  /// Slot occurrences in order of appearance.
  std::vector<Slot> slot_occurrences() const;
  /// Distinct slots ordered by first appearance.
  std::vector<Slot> distinct_slots() const;
  bool is_variant() const { return ref.variant.has_value(); }
};

struct TemplateSet {
  std::string name;
  std::string version;
  std::vector<Template> templates;

  const Template* find(const TemplateRef& ref) const;
  std::size_t size() const { return templates.size(); }
};

struct Violation {
  std::string message;
  std::optional<std::size_t> segment;  // offending segment position, if local
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

struct SetCounts {
  std::size_t base = 0;
  std::size_t variants = 0;
};

struct SetValidation {
  ValidationResult result;
  SetCounts counts;
  bool ok() const { return result.ok(); }
};

// Bounds on a single template.
inline constexpr int kMaxEcVariables = 4;
inline constexpr int kMaxPcVariables = 2;
inline constexpr int kMaxVariables = 5;
inline constexpr int kMaxSlotOccurrences = 6;
inline constexpr int kMaxPcParts = 3;

ValidationResult validate_template(const Template& t);
SetValidation validate_set(const TemplateSet& s);

struct StructuralStats {
  int max_ec_vars = 0;
  int max_pc_vars = 0;
  int max_total_vars = 0;
  int max_slot_occurrences = 0;
  int max_pc_split = 0;
  std::size_t templates_with_ec = 0;
  std::size_t template_count = 0;
};

StructuralStats structural_stats(const TemplateSet& s);

}  // namespace claro
