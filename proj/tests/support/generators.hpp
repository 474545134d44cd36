#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "skoskit/model.hpp"
#include "skoskit/rdf.hpp"

namespace skoskit::testkit {

using Rng = std::mt19937_64;

struct ThesaurusShape {
  std::size_t descriptors = 20;
  std::size_t non_descriptors = 8;
  std::size_t ad_terms = 2;
  std::size_t broader = 15;
  std::size_t related = 6;
  std::size_t notations = 5;
  /// Share of plain non-descriptors redirected by a compound instead of USE.
  double compound_share = 0.3;
  /// Chance that a term carries a label in each non-pivot language.
  double translation_rate = 0.6;
  std::vector<std::string> languages = {"de", "en", "fr"};
  std::string pivot = "de";
  /// Pseudo-word labels ("kantoril vesmara") instead of "term <i> <lang>".
  bool word_labels = false;
};

/// Valid parts by construction: broader edges only run from higher to lower
/// descriptor index, every descriptor is classified, label texts are unique.
ThesaurusParts random_parts(Rng& rng, const ThesaurusShape& shape = {});

/// assemble(random_parts()); throws if assembly unexpectedly fails.
Thesaurus random_thesaurus(Rng& rng, const ThesaurusShape& shape = {});

/// One to three pseudo-words built from syllables.
std::string random_phrase(Rng& rng);

/// Mixed-script scalar values: ASCII, Latin-1, umlauts, Greek, Cyrillic, CJK, astral.
std::u32string random_u32(Rng& rng, std::size_t max_length);
std::string random_unicode(Rng& rng, std::size_t max_length);

/// Graph with adversarial lexical forms (quotes, backslashes, control
/// characters, non-ASCII), language tags, datatypes and assorted IRIs.
rdf::Graph random_graph(Rng& rng, std::size_t triples);

}  // namespace skoskit::testkit
