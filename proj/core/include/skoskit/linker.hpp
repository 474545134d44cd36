#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skoskit/diagnostics.hpp"
#include "skoskit/model.hpp"
#include "skoskit/rdf.hpp"
#include "skoskit/skos_graph.hpp"

namespace skoskit::link {

enum class MatchType { Exact, Close, Broad, Narrow, Related };

/// "exactMatch", "closeMatch", ...
const char* to_string(MatchType type);
/// Accepts the local name, "skos:"-prefixed or full SKOS IRI forms.
std::optional<MatchType> parse_match_type(std::string_view s);
rdf::Iri predicate(MatchType type);

enum class Provenance { ExactString, Levenshtein, Imported };
const char* to_string(Provenance p);

struct TargetEntry {
  rdf::Iri iri;
  LanguageTag language;
  std::string label;
  bool preferred = true;
};

struct TargetVocabulary {
  std::string name;
  rdf::Iri dataset;
  std::vector<TargetEntry> entries;
};

struct MappingLink {
  rdf::Iri source;
  rdf::Iri target;
  MatchType match_type = MatchType::Exact;
  /// Normalized edit distance in [0, 1]; 0 for exact matches.
  double score = 0.0;
  Provenance provenance = Provenance::Imported;
  rdf::Iri target_dataset;
  /// Non-empty for links that came from one conjunctive (single-to-multiple)
  /// import record; all links of the record share the key.
  std::string conjunct_group;

  friend bool operator==(const MappingLink&, const MappingLink&) = default;
};

/// scheme://authority/ of an IRI, used to group links by target dataset.
rdf::Iri dataset_of(const rdf::Iri& iri);

// ---------------------------------------------------------------------------
// String distance

/// Unit-cost edit distance over Unicode scalar values.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
/// UTF-8 convenience overload.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Edit distance when it is <= bound, otherwise bound + 1. Evaluates only a
/// diagonal band of width 2*bound+1 and stops once the band exceeds bound.
std::size_t bounded_levenshtein(std::u32string_view a, std::u32string_view b, std::size_t bound);

/// levenshtein(a, b) / max(|a|, |b|); 0 when both are empty.
double normalized_distance(std::u32string_view a, std::u32string_view b);
double normalized_distance(std::string_view a, std::string_view b);

/// Largest edit distance accepted at `threshold` for strings whose longer side
/// has `max_length` scalar values: floor(threshold * max_length), tolerant to
/// binary rounding of the threshold.
std::size_t distance_budget(double threshold, std::size_t max_length);

// ---------------------------------------------------------------------------
// Discovery

struct DiscoveryOptions {
  double threshold = 0.21;
  /// Defaults to the thesaurus pivot language.
  std::optional<LanguageTag> language;
  unsigned workers = 1;
  /// Length, character-histogram and banded-DP pruning. Never changes the result.
  bool prune = true;
};

/// Case-folded matching of descriptor prefLabels against preferred target
/// entries in the same language. A pair links when its distance is within
/// distance_budget(); each source keeps only its minimal normalized distance
/// target, ties going to the smallest target IRI. Distance 0 gives exactMatch,
/// anything else closeMatch. Output sorted by (source, target).
/// Throws std::invalid_argument for a language the thesaurus does not declare
/// or a threshold outside [0, 1].
std::vector<MappingLink> discover_links(const Thesaurus& thesaurus, const skos::UriPolicy& policy,
                                        const TargetVocabulary& target, const DiscoveryOptions& options = {});

// ---------------------------------------------------------------------------
// Validation

struct Finding {
  Severity severity = Severity::Error;
  std::string code;
  rdf::Iri source;
  std::vector<rdf::Iri> targets;
  std::string message;
};

struct MappingValidationReport {
  std::vector<Finding> findings;

  bool has_errors() const;
  std::size_t count(std::string_view code) const;
  std::string to_text() const;
  std::string to_json() const;
};

/// NONPREF_SOURCE (error): source is a non-preferred term rather than a concept.
/// LABEL_SOURCE (error): source is a descriptor's label rather than its concept.
/// UNKNOWN_SOURCE (error): source is neither a concept nor a label of the thesaurus.
/// SINGLE_TO_MULTIPLE (warning): one conjunctive record maps to >= 2 targets.
/// DUPLICATE_LINK (error): the same (source, target) with conflicting match types.
MappingValidationReport validate_mappings(const std::vector<MappingLink>& links, const Thesaurus& thesaurus,
                                          const skos::UriPolicy& policy);

// ---------------------------------------------------------------------------
// Output

struct MappingOutput {
  rdf::Graph graph;
  /// One entry per (target dataset, predicate), sorted.
  std::vector<skos::LinksetSummary> summary;
};

/// One skos:*Match triple per link. Conjunctive links are left out: SKOS
/// mapping properties cannot express a single-to-multiple mapping.
MappingOutput emit_mapping_triples(const std::vector<MappingLink>& links);

/// Mapping links read back from skos:*Match triples of a graph.
std::vector<MappingLink> links_from_graph(const rdf::Graph& graph);

// ---------------------------------------------------------------------------
// Files

struct TargetLoad {
  TargetVocabulary vocabulary;
  Diagnostics diagnostics;
};

/// TSV with header `iri lang label preferred` (preferred in {0, 1}).
/// `dataset` defaults to dataset_of() the first entry.
TargetLoad read_target_vocabulary(const std::filesystem::path& path, std::string name,
                                  std::optional<rdf::Iri> dataset = std::nullopt);

struct ImportLoad {
  std::vector<MappingLink> links;
  Diagnostics diagnostics;
};

/// TSV with header `source_id target_iri match_type`; a row may carry several
/// target_iri columns (all but the first and last field), which marks it as a
/// conjunctive record. Descriptors map to their concept IRI, non-preferred
/// terms to their pivot label IRI; an unknown id is kept as a concept IRI so
/// validate_mappings() reports it.
ImportLoad read_imported_mappings(const std::filesystem::path& path, const Thesaurus& thesaurus,
                                  const skos::UriPolicy& policy);

}  // namespace skoskit::link
