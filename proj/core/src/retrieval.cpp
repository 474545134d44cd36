#include "skoskit/retrieval.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "skoskit/text.hpp"
#include "tsv.hpp"

namespace skoskit::retrieval {

const char* to_string(Origin origin) {
  switch (origin) {
    case Origin::Self: return "self";
    case Origin::UseRedirect: return "use-redirect";
    case Origin::CompoundRedirect: return "compound-redirect";
    case Origin::ExactMatch: return "exactMatch";
    case Origin::Narrower: return "narrower";
    case Origin::Related: return "related";
  }
  return "?";
}

std::set<rdf::Iri> Resolution::concepts() const {
  std::set<rdf::Iri> out = direct;
  out.insert(redirected.begin(), redirected.end());
  return out;
}

LabelIndex::LabelIndex(const Thesaurus& thesaurus, const skos::UriPolicy& policy) {
  for (const auto& [id, term] : thesaurus.terms()) {
    for (const auto& [lang, label] : term.labels) labels_[text::fold(label)][lang].push_back(id);
    Target target;
    if (term.kind == TermKind::Descriptor) {
      target.self = skos::concept_iri(policy, id);
      descriptors_.insert(*target.self);
    }
    for (const auto* eq : thesaurus.equivalences_of(id)) {
      target.redirects.push_back(
          {id, skos::equivalence_iri(policy, *eq), {skos::concept_iri(policy, eq->preferred)}, false});
    }
    for (const auto* comp : thesaurus.compounds_of(id)) {
      Redirect r{id, skos::compound_iri(policy, comp->group_key), {}, true};
      for (const auto& c : comp->components) r.concepts.push_back(skos::concept_iri(policy, c));
      target.redirects.push_back(std::move(r));
    }
    targets_.emplace(id, std::move(target));
  }
  for (const auto& r : thesaurus.semantic_relations()) {
    auto source = skos::concept_iri(policy, r.source);
    auto target = skos::concept_iri(policy, r.target);
    if (r.kind == SemanticKind::Narrower) narrower_[source].push_back(target);
    if (r.kind == SemanticKind::Related) related_[source].push_back(target);
  }
}

Resolution LabelIndex::resolve(std::string_view query, const std::optional<LanguageTag>& language) const {
  Resolution out;
  if (!text::is_valid_utf8(query)) return out;
  const auto it = labels_.find(text::fold(query));
  if (it == labels_.end()) return out;
  std::set<TermId> ids;
  for (const auto& [lang, terms] : it->second) {
    if (!language || lang == *language) ids.insert(terms.begin(), terms.end());
  }
  for (const auto& id : ids) {
    const Target& t = targets_.at(id);
    if (t.self) out.direct.insert(*t.self);
    for (const auto& r : t.redirects) {
      if (r.conjunctive) {
        out.conjunctive_groups.push_back(r.concepts);
      } else {
        out.redirected.insert(r.concepts.begin(), r.concepts.end());
      }
      out.trace.push_back(r);
    }
  }
  return out;
}

namespace {

const std::vector<rdf::Iri>& lookup(const std::map<rdf::Iri, std::vector<rdf::Iri>>& m, const rdf::Iri& key) {
  static const std::vector<rdf::Iri> none;
  const auto it = m.find(key);
  return it == m.end() ? none : it->second;
}

}  // namespace

const std::vector<rdf::Iri>& LabelIndex::narrower(const rdf::Iri& node) const { return lookup(narrower_, node); }
const std::vector<rdf::Iri>& LabelIndex::related(const rdf::Iri& node) const { return lookup(related_, node); }

ExpansionResult expand(const LabelIndex& index, const std::vector<link::MappingLink>& links, std::string_view query,
                       const std::optional<LanguageTag>& language, const ExpansionOptions& options) {
  const Resolution res = index.resolve(query, language);
  ExpansionResult out{std::string(query), language, res.direct, {}, res.conjunctive_groups, res.trace};

  std::map<rdf::Iri, Origin> origin;
  auto add = [&](const rdf::Iri& iri, Origin o) {
    auto [it, fresh] = origin.emplace(iri, o);
    if (!fresh && o < it->second) it->second = o;
  };
  for (const auto& c : res.direct) add(c, Origin::Self);
  for (const auto& c : res.redirected) add(c, Origin::UseRedirect);
  for (const auto& group : res.conjunctive_groups) {
    for (const auto& c : group) add(c, Origin::CompoundRedirect);
  }
  std::set<rdf::Iri> base;
  for (const auto& [iri, o] : origin) base.insert(iri);

  if (options.follow_exact) {
    for (const auto& l : links) {
      if (l.match_type == link::MatchType::Exact && l.conjunct_group.empty() && base.contains(l.source)) {
        add(l.target, Origin::ExactMatch);
      }
    }
  }
  if (options.follow_narrower) {
    std::set<rdf::Iri> frontier = base, seen = base;
    for (unsigned level = 0; level < options.depth && !frontier.empty(); ++level) {
      std::set<rdf::Iri> next;
      for (const auto& c : frontier) {
        for (const auto& n : index.narrower(c)) {
          if (seen.insert(n).second) next.insert(n);
          add(n, Origin::Narrower);
        }
      }
      frontier = std::move(next);
    }
  }
  if (options.follow_related) {
    for (const auto& c : base) {
      for (const auto& r : index.related(c)) add(r, Origin::Related);
    }
  }

  for (const auto& [iri, o] : origin) out.expansion.push_back({iri, o});
  std::stable_sort(out.expansion.begin(), out.expansion.end(),
                   [](const ExpansionItem& a, const ExpansionItem& b) { return a.origin < b.origin; });
  return out;
}

std::string ExpansionResult::to_text() const {
  std::string out;
  for (const auto& item : expansion) out += std::string(to_string(item.origin)) + "\t" + item.iri.str() + "\n";
  for (const auto& group : conjunctive_groups) {
    out += "conjunctive";
    for (const auto& c : group) out += "\t" + c.str();
    out += "\n";
  }
  for (const auto& r : trace) {
    out += std::string("redirect\t") + r.from.str() + "\t" + r.via.str() + "\n";
  }
  return out;
}

std::string ExpansionResult::to_json() const {
  using nlohmann::ordered_json;
  auto iris = [](const auto& range) {
    ordered_json arr = ordered_json::array();
    for (const auto& i : range) arr.push_back(i.str());
    return arr;
  };
  ordered_json items = ordered_json::array();
  for (const auto& item : expansion) items.push_back({{"iri", item.iri.str()}, {"origin", to_string(item.origin)}});
  ordered_json groups = ordered_json::array();
  for (const auto& g : conjunctive_groups) groups.push_back(iris(g));
  ordered_json trace_json = ordered_json::array();
  for (const auto& r : trace) {
    trace_json.push_back(
        {{"from", r.from.str()}, {"via", r.via.str()}, {"concepts", iris(r.concepts)}, {"conjunctive", r.conjunctive}});
  }
  ordered_json doc = {{"query", query},
                      {"language", language ? nlohmann::ordered_json(language->str()) : nlohmann::ordered_json()},
                      {"matched_concepts", iris(matched_concepts)},
                      {"expansion", items},
                      {"conjunctive_groups", groups},
                      {"trace", trace_json}};
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Co-word analysis

std::size_t CoWordMatrix::count(const rdf::Iri& a, const rdf::Iri& b) const {
  const auto it = a < b ? pairs_.find({a, b}) : pairs_.find({b, a});
  return it == pairs_.end() ? 0 : it->second;
}

std::map<rdf::Iri, std::size_t> CoWordMatrix::neighbours(const rdf::Iri& a) const {
  const auto it = adjacency_.find(a);
  return it == adjacency_.end() ? std::map<rdf::Iri, std::size_t>{} : it->second;
}

CoWordMatrix build_coword(const std::vector<Document>& corpus, const std::set<rdf::Iri>& descriptors) {
  CoWordMatrix m;
  m.documents_ = corpus.size();
  for (const auto& doc : corpus) {
    for (const auto& d : doc.descriptors) {
      if (!descriptors.contains(d)) {
        throw std::invalid_argument("document '" + doc.id + "' names unknown descriptor <" + d.str() + ">");
      }
    }
    for (auto a = doc.descriptors.begin(); a != doc.descriptors.end(); ++a) {
      for (auto b = std::next(a); b != doc.descriptors.end(); ++b) {
        ++m.pairs_[{*a, *b}];
        ++m.adjacency_[*a][*b];
        ++m.adjacency_[*b][*a];
      }
    }
  }
  return m;
}

std::vector<Recommendation> recommend(const CoWordMatrix& matrix, const rdf::Iri& seed, std::size_t k) {
  std::vector<Recommendation> out;
  for (const auto& [iri, n] : matrix.neighbours(seed)) out.push_back({iri, n});
  std::stable_sort(out.begin(), out.end(),
                   [](const Recommendation& a, const Recommendation& b) { return a.count > b.count; });
  if (out.size() > k) out.erase(out.begin() + static_cast<std::ptrdiff_t>(k), out.end());
  return out;
}

CorpusLoad read_corpus(const std::filesystem::path& path, const Thesaurus& thesaurus,
                       const skos::UriPolicy& policy) {
  CorpusLoad out;
  const std::string file = path.filename().string();
  std::map<std::string, std::set<rdf::Iri>> docs;
  detail::read_tsv(path, file, {"doc_id", "descriptor_id"}, out.diagnostics,
                   [&](const detail::TsvRow& row, std::size_t line) {
                     if (row[0].empty()) {
                       out.diagnostics.error(file, line, "BAD_VALUE", "empty doc_id");
                       return;
                     }
                     const Term* term = TermId::is_valid(row[1]) ? thesaurus.find(TermId(row[1])) : nullptr;
                     if (!term || term->kind != TermKind::Descriptor) {
                       out.diagnostics.error(file, line, "UNKNOWN_DESCRIPTOR",
                                             "'" + row[1] + "' is not a descriptor of the thesaurus");
                       return;
                     }
                     docs[row[0]].insert(skos::concept_iri(policy, term->id));
                   });
  for (auto& [id, set] : docs) out.documents.push_back({id, std::move(set)});
  out.diagnostics.sort();
  return out;
}

}  // namespace skoskit::retrieval
