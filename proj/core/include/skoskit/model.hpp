#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "skoskit/diagnostics.hpp"

namespace skoskit {

/// Opaque, release-stable identifier of a thesaurus term. Any non-empty UTF-8
/// string without control characters is accepted; IRI safety is obtained by
/// percent-encoding at minting time.
class TermId {
 public:
  /// Throws std::invalid_argument when `value` is not a valid identifier.
  explicit TermId(std::string value);

  static bool is_valid(std::string_view value);

  const std::string& str() const { return value_; }

  friend auto operator<=>(const TermId&, const TermId&) = default;

 private:
  std::string value_;
};

/// BCP-47 style language tag, stored lowercased.
class LanguageTag {
 public:
  explicit LanguageTag(std::string_view code);

  static bool is_valid(std::string_view code);

  const std::string& str() const { return code_; }

  friend auto operator<=>(const LanguageTag&, const LanguageTag&) = default;

 private:
  std::string code_;
};

enum class TermKind { Descriptor, NonDescriptor, AlternativeNonDescriptor };

/// "D", "ND" or "AD".
const char* to_code(TermKind kind);
std::optional<TermKind> parse_term_kind(std::string_view code);

inline bool is_non_preferred(TermKind kind) { return kind != TermKind::Descriptor; }

using LabelMap = std::map<LanguageTag, std::string>;

struct Term {
  TermId id;
  TermKind kind = TermKind::Descriptor;
  LabelMap labels;
  std::set<std::string> classification_codes;

  const std::string* label(const LanguageTag& lang) const;

  friend bool operator==(const Term&, const Term&) = default;
};

enum class SemanticKind { Broader, Narrower, Related };

/// "BT", "NT" or "RT".
const char* to_code(SemanticKind kind);

struct SemanticRelation {
  TermId source;
  SemanticKind kind = SemanticKind::Related;
  TermId target;

  friend auto operator<=>(const SemanticRelation&, const SemanticRelation&) = default;
};

/// "use instead": the non-preferred term is replaced by one descriptor.
struct EquivalenceRelation {
  TermId non_preferred;
  TermId preferred;

  friend auto operator<=>(const EquivalenceRelation&, const EquivalenceRelation&) = default;
};

/// "use combination": the non-preferred term is replaced by the conjunction
/// of all components, in order.
struct CompoundEquivalenceRelation {
  std::string group_key;
  TermId non_preferred;
  std::vector<TermId> components;

  friend auto operator<=>(const CompoundEquivalenceRelation&, const CompoundEquivalenceRelation&) = default;
};

struct ClassificationNode {
  std::string notation;
  LabelMap labels;
  std::optional<std::string> parent;

  friend bool operator==(const ClassificationNode&, const ClassificationNode&) = default;
};

struct ClassificationAssignment {
  TermId term;
  std::string notation;
};

std::set<LanguageTag> default_languages();
LanguageTag default_pivot();

/// Unvalidated input to assemble(). Relations are kept in input order so
/// findings can point back at the offending entry.
struct ThesaurusParts {
  std::set<LanguageTag> languages = default_languages();
  LanguageTag pivot = default_pivot();
  std::vector<Term> terms;
  std::vector<SemanticRelation> semantic;
  std::vector<EquivalenceRelation> equivalences;
  std::vector<CompoundEquivalenceRelation> compounds;
  std::vector<ClassificationNode> classification;
  std::vector<ClassificationAssignment> assignments;
};

enum class PartKind { None, Term, Semantic, Equivalence, Compound, Classification, Assignment };

struct PartRef {
  PartKind kind = PartKind::None;
  std::size_t index = 0;
};

struct Violation {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  PartRef where;
};

struct AssemblyOptions {
  /// Descriptors must carry at least one classification notation.
  bool require_classification = true;
};

class Thesaurus;

struct AssemblyResult;

/// Validates `parts`, applies inverse closure and returns a Thesaurus when no
/// error-severity violation was found.
AssemblyResult assemble(ThesaurusParts parts, const AssemblyOptions& options = {});

/// Immutable, validated vocabulary. Broader/Narrower are inverse-closed and
/// Related is symmetric.
class Thesaurus {
 public:
  /// Empty thesaurus with the default language set.
  Thesaurus();

  const std::set<LanguageTag>& languages() const { return languages_; }
  const LanguageTag& pivot() const { return pivot_; }
  const std::map<TermId, Term>& terms() const { return terms_; }
  const std::set<SemanticRelation>& semantic_relations() const { return semantic_; }
  const std::set<EquivalenceRelation>& equivalences() const { return equivalences_; }
  const std::map<std::string, CompoundEquivalenceRelation>& compounds() const { return compounds_; }
  const std::map<std::string, ClassificationNode>& classification() const { return classification_; }

  const Term* find(const TermId& id) const;
  std::vector<const EquivalenceRelation*> equivalences_of(const TermId& non_preferred) const;
  std::vector<const CompoundEquivalenceRelation*> compounds_of(const TermId& non_preferred) const;

  friend bool operator==(const Thesaurus& a, const Thesaurus& b);

 private:
  friend AssemblyResult assemble(ThesaurusParts parts, const AssemblyOptions& options);

  std::set<LanguageTag> languages_;
  LanguageTag pivot_;
  std::map<TermId, Term> terms_;
  std::set<SemanticRelation> semantic_;
  std::set<EquivalenceRelation> equivalences_;
  std::map<std::string, CompoundEquivalenceRelation> compounds_;
  std::map<std::string, ClassificationNode> classification_;
  std::map<TermId, std::vector<TermId>> equivalences_by_term_;
  std::map<TermId, std::vector<std::string>> compounds_by_term_;
};

struct AssemblyResult {
  std::optional<Thesaurus> thesaurus;
  std::vector<Violation> violations;

  bool ok() const { return thesaurus.has_value(); }
  std::size_t error_count() const;
};

/// Validation alone, without building a Thesaurus.
std::vector<Violation> validate(const ThesaurusParts& parts, const AssemblyOptions& options = {});

/// Adds the Narrower inverse of every Broader (and vice versa) and mirrors
/// every Related. Idempotent.
std::set<SemanticRelation> close_semantic_relations(const std::set<SemanticRelation>& relations);

/// Decomposes a thesaurus back into parts; assemble(to_parts(t)) == t.
ThesaurusParts to_parts(const Thesaurus& thesaurus);

/// Re-checks every structural invariant of an assembled thesaurus and returns
/// a description of each breach. Empty for any thesaurus built by assemble().
std::vector<std::string> invariant_breaches(const Thesaurus& thesaurus);

struct StatsReport {
  std::size_t descriptors = 0;
  std::size_t non_descriptors = 0;
  std::size_t ad_terms = 0;
  std::size_t labels = 0;
  std::size_t broader = 0;
  std::size_t narrower = 0;
  std::size_t related = 0;
  std::size_t equivalences = 0;
  std::size_t compounds = 0;
  std::size_t compound_components = 0;
  std::size_t classification_nodes = 0;
  std::size_t classification_assignments = 0;
  std::size_t languages = 0;

  std::string to_text() const;
  std::string to_json() const;

  friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

StatsReport stats(const Thesaurus& thesaurus);

}  // namespace skoskit
