#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skoskit/diagnostics.hpp"
#include "skoskit/linker.hpp"
#include "skoskit/model.hpp"
#include "skoskit/rdf.hpp"
#include "skoskit/skos_graph.hpp"

namespace skoskit::retrieval {

/// Why a concept is part of an expansion. Declaration order is the output
/// order and the priority when one concept is reached several ways.
enum class Origin { Self, UseRedirect, CompoundRedirect, ExactMatch, Narrower, Related };

/// "self", "use-redirect", "compound-redirect", "exactMatch", "narrower", "related"
const char* to_string(Origin origin);

/// One step from a non-preferred label to the concept(s) that replace it.
struct Redirect {
  /// The non-preferred term whose label matched.
  TermId from;
  /// The thesoz:EquivalenceRelationship or thesoz:CompoundEquivalence node.
  rdf::Iri via;
  std::vector<rdf::Iri> concepts;
  /// Compound redirects must be used together.
  bool conjunctive = false;

  friend bool operator==(const Redirect&, const Redirect&) = default;
};

struct Resolution {
  /// Concepts matched directly by a descriptor label.
  std::set<rdf::Iri> direct;
  /// Targets of "use instead" redirects.
  std::set<rdf::Iri> redirected;
  /// Each "use combination" redirect, components in order.
  std::vector<std::vector<rdf::Iri>> conjunctive_groups;
  std::vector<Redirect> trace;

  /// direct and redirected concepts; conjunctive groups are kept apart.
  std::set<rdf::Iri> concepts() const;
  bool empty() const { return direct.empty() && redirected.empty() && conjunctive_groups.empty(); }
};

/// Case-folded NFC label lookup over every term of a thesaurus, plus the
/// concept-level narrower/related adjacency used by expansion. Immutable.
class LabelIndex {
 public:
  LabelIndex(const Thesaurus& thesaurus, const skos::UriPolicy& policy);

  /// Unknown labels resolve to an empty Resolution. Without a language the
  /// label may match in any language.
  Resolution resolve(std::string_view query, const std::optional<LanguageTag>& language) const;

  const std::set<rdf::Iri>& descriptors() const { return descriptors_; }
  const std::vector<rdf::Iri>& narrower(const rdf::Iri& node) const;
  const std::vector<rdf::Iri>& related(const rdf::Iri& node) const;
  /// Distinct folded label texts.
  std::size_t label_count() const { return labels_.size(); }

 private:
  struct Target {
    std::optional<rdf::Iri> self;
    std::vector<Redirect> redirects;
  };

  std::map<std::string, std::map<LanguageTag, std::vector<TermId>>> labels_;
  std::map<TermId, Target> targets_;
  std::set<rdf::Iri> descriptors_;
  std::map<rdf::Iri, std::vector<rdf::Iri>> narrower_;
  std::map<rdf::Iri, std::vector<rdf::Iri>> related_;
};

struct ExpansionOptions {
  bool follow_exact = true;
  bool follow_narrower = false;
  bool follow_related = false;
  /// Narrower levels followed when follow_narrower is set.
  unsigned depth = 1;
};

struct ExpansionItem {
  rdf::Iri iri;
  Origin origin = Origin::Self;

  friend bool operator==(const ExpansionItem&, const ExpansionItem&) = default;
};

struct ExpansionResult {
  std::string query;
  std::optional<LanguageTag> language;
  /// Concepts whose own label matched the query (origin self).
  std::set<rdf::Iri> matched_concepts;
  /// Sorted by (origin, IRI); every IRI appears once, with its first origin.
  std::vector<ExpansionItem> expansion;
  std::vector<std::vector<rdf::Iri>> conjunctive_groups;
  std::vector<Redirect> trace;

  std::string to_text() const;
  std::string to_json() const;
};

/// Resolves the query and grows it along exactMatch links (from `links`),
/// narrower descendants and related neighbours of the resolved concepts.
ExpansionResult expand(const LabelIndex& index, const std::vector<link::MappingLink>& links, std::string_view query,
                       const std::optional<LanguageTag>& language, const ExpansionOptions& options = {});

// ---------------------------------------------------------------------------
// Co-word analysis

struct Document {
  std::string id;
  std::set<rdf::Iri> descriptors;
};

/// Symmetric co-occurrence counts of descriptor pairs. Pairs are stored once
/// with the smaller IRI first; zero counts are absent.
class CoWordMatrix {
 public:
  std::size_t documents() const { return documents_; }
  std::size_t count(const rdf::Iri& a, const rdf::Iri& b) const;
  const std::map<std::pair<rdf::Iri, rdf::Iri>, std::size_t>& pairs() const { return pairs_; }
  /// Co-occurring descriptors of `a` with their counts.
  std::map<rdf::Iri, std::size_t> neighbours(const rdf::Iri& a) const;

 private:
  friend CoWordMatrix build_coword(const std::vector<Document>&, const std::set<rdf::Iri>&);

  std::size_t documents_ = 0;
  std::map<std::pair<rdf::Iri, rdf::Iri>, std::size_t> pairs_;
  std::map<rdf::Iri, std::map<rdf::Iri, std::size_t>> adjacency_;
};

/// Throws std::invalid_argument when a document names an IRI outside `descriptors`.
CoWordMatrix build_coword(const std::vector<Document>& corpus, const std::set<rdf::Iri>& descriptors);

struct Recommendation {
  rdf::Iri iri;
  std::size_t count = 0;

  friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

/// Top-k neighbours of `seed` by descending count, ties by IRI.
std::vector<Recommendation> recommend(const CoWordMatrix& matrix, const rdf::Iri& seed, std::size_t k);

struct CorpusLoad {
  std::vector<Document> documents;
  Diagnostics diagnostics;
};

/// TSV with header `doc_id descriptor_id`, one row per assignment. Documents
/// come out sorted by id. Ids that are not descriptors give UNKNOWN_DESCRIPTOR.
CorpusLoad read_corpus(const std::filesystem::path& path, const Thesaurus& thesaurus, const skos::UriPolicy& policy);

}  // namespace skoskit::retrieval
