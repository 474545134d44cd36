#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skoskit/model.hpp"
#include "skoskit/rdf.hpp"

namespace skoskit::skos {

inline constexpr std::string_view kDefaultBase = "http://lod.gesis.org/thesoz/";

/// Where minted IRIs live. `base` holds instance data, `ext` the extension
/// vocabulary (bound to the `thesoz` prefix). Both end in '/'.
class UriPolicy {
 public:
  UriPolicy();
  /// ext defaults to base + "ext/".
  explicit UriPolicy(rdf::Iri base);
  UriPolicy(rdf::Iri base, rdf::Iri ext);

  const rdf::Iri& base() const { return base_; }
  const rdf::Iri& ext() const { return ext_; }

 private:
  rdf::Iri base_;
  rdf::Iri ext_;
};

// IRI scheme, each key percent-encoded as one path segment:
//   concept/<id>  label/<id>/<lang>  eqrel/<nonpref-id>/<pref-id>
//   compound/<group-key>  classification/<notation>
// Distinct keys map to distinct IRIs within each entity class and across classes.

rdf::Iri concept_iri(const UriPolicy& policy, const TermId& id);
rdf::Iri label_iri(const UriPolicy& policy, const TermId& id, const LanguageTag& lang);
rdf::Iri equivalence_iri(const UriPolicy& policy, const EquivalenceRelation& relation);
rdf::Iri compound_iri(const UriPolicy& policy, std::string_view group_key);
rdf::Iri classification_iri(const UriPolicy& policy, std::string_view notation);

/// Names of the twelve extension terms, relative to UriPolicy::ext().
namespace ext {
inline constexpr std::string_view Descriptor = "Descriptor";
inline constexpr std::string_view Classification = "Classification";
inline constexpr std::string_view EquivalenceRelationship = "EquivalenceRelationship";
inline constexpr std::string_view CompoundEquivalence = "CompoundEquivalence";
inline constexpr std::string_view use = "use";
inline constexpr std::string_view usedFor = "usedFor";
inline constexpr std::string_view preferredTermComponent = "preferredTermComponent";
inline constexpr std::string_view compoundNonPreferredTerm = "compoundNonPreferredTerm";
inline constexpr std::string_view isPartOfEquivalenceRelationship = "isPartOfEquivalenceRelationship";
inline constexpr std::string_view isPartOfCompoundEquivalence = "isPartOfCompoundEquivalence";
inline constexpr std::string_view hasTranslation = "hasTranslation";
inline constexpr std::string_view isTranslationOf = "isTranslationOf";

inline constexpr std::array<std::string_view, 4> kClasses = {Descriptor, Classification, EquivalenceRelationship,
                                                             CompoundEquivalence};
inline constexpr std::array<std::string_view, 8> kProperties = {
    use, usedFor, preferredTermComponent, compoundNonPreferredTerm, isPartOfEquivalenceRelationship,
    isPartOfCompoundEquivalence, hasTranslation, isTranslationOf};
}  // namespace ext

rdf::Iri ext_term(const UriPolicy& policy, std::string_view name);

/// Property linking a descriptor concept to its classification notation.
rdf::Iri classification_assignment_property();

struct DatasetMetadata {
  std::string title = "Thesaurus";
  std::string title_language = "en";
  std::string license = "http://creativecommons.org/licenses/by-nc-nd/3.0/";
  /// xsd:date lexical form; omitted from the graph when unset so output stays reproducible.
  std::optional<std::string> modified;
};

struct ConversionOptions {
  /// Emit skosxl:altLabel / skos:altLabel for plain non-descriptors with a single USE relation.
  bool emit_altlabels = true;
  bool include_metadata = true;
  DatasetMetadata metadata;
};

/// Graph of a validated thesaurus: descriptors, labels, semantic relations,
/// equivalence and compound nodes, translations, classification, metadata.
rdf::Graph to_skos(const Thesaurus& thesaurus, const UriPolicy& policy, const ConversionOptions& options = {});

/// Dataset-level triples only (subject: policy.base()).
rdf::Graph dataset_metadata(const UriPolicy& policy, const DatasetMetadata& metadata);

/// RDF Schema / OWL declarations of the extension vocabulary.
rdf::Graph emit_extension_schema(const UriPolicy& policy);

struct LinksetSummary {
  rdf::Iri target_dataset;
  rdf::Iri predicate;
  std::uint64_t count = 0;

  friend auto operator<=>(const LinksetSummary&, const LinksetSummary&) = default;
};

/// VoiD description: one void:Dataset (policy.base()) whose void:triples is
/// |graph|, and one void:Linkset per summary entry.
rdf::Graph emit_void(const rdf::Graph& graph, const std::vector<LinksetSummary>& linksets, const UriPolicy& policy);

rdf::Iri linkset_iri(const UriPolicy& policy, const LinksetSummary& linkset);

}  // namespace skoskit::skos
