#include "skoskit/skos_graph.hpp"

#include <stdexcept>

#include "skoskit/text.hpp"

namespace skoskit::skos {

using rdf::Graph;
using rdf::Iri;
using rdf::Literal;

namespace {

Iri require_slash(Iri iri) {
  if (iri.str().back() != '/') throw std::invalid_argument("namespace IRI must end with '/': " + iri.str());
  return iri;
}

Iri under(const Iri& base, std::string_view kind, std::initializer_list<std::string_view> keys) {
  std::string s = base.str();
  s.append(kind);
  for (auto key : keys) {
    if (key.empty()) throw std::invalid_argument("cannot mint an IRI from an empty key");
    s.push_back('/');
    s += text::percent_encode_segment(key);
  }
  return Iri(std::move(s));
}

Iri rdf_type() { return rdf::term(rdf::ns::rdf, "type"); }
Iri skos(std::string_view local) { return rdf::term(rdf::ns::skos, local); }
Iri skosxl(std::string_view local) { return rdf::term(rdf::ns::skosxl, local); }

}  // namespace

UriPolicy::UriPolicy() : UriPolicy(Iri(std::string(kDefaultBase))) {}

UriPolicy::UriPolicy(Iri base) : base_(require_slash(std::move(base))), ext_(base_.str() + "ext/") {}

UriPolicy::UriPolicy(Iri base, Iri ext) : base_(require_slash(std::move(base))), ext_(require_slash(std::move(ext))) {}

Iri concept_iri(const UriPolicy& p, const TermId& id) { return under(p.base(), "concept", {id.str()}); }

Iri label_iri(const UriPolicy& p, const TermId& id, const LanguageTag& lang) {
  return under(p.base(), "label", {id.str(), lang.str()});
}

Iri equivalence_iri(const UriPolicy& p, const EquivalenceRelation& r) {
  return under(p.base(), "eqrel", {r.non_preferred.str(), r.preferred.str()});
}

Iri compound_iri(const UriPolicy& p, std::string_view group_key) { return under(p.base(), "compound", {group_key}); }

Iri classification_iri(const UriPolicy& p, std::string_view notation) {
  return under(p.base(), "classification", {notation});
}

Iri ext_term(const UriPolicy& p, std::string_view name) { return rdf::term(p.ext().str(), name); }

Iri classification_assignment_property() { return rdf::term(rdf::ns::dct, "subject"); }

namespace {

class SkosEmitter {
 public:
  SkosEmitter(const Thesaurus& t, const UriPolicy& p, const ConversionOptions& o)
      : t_(t),
        p_(p),
        o_(o),
        type_(rdf_type()),
        concept_(skos("Concept")),
        pref_label_(skos("prefLabel")),
        alt_label_(skos("altLabel")),
        xl_label_(skosxl("Label")),
        xl_pref_label_(skosxl("prefLabel")),
        xl_alt_label_(skosxl("altLabel")),
        literal_form_(skosxl("literalForm")) {
    g_.bind("thesoz", p.ext());
  }

  Graph run() {
    for (const auto& [id, term] : t_.terms()) emit_term(term);
    for (const auto& r : t_.semantic_relations()) emit_semantic(r);
    for (const auto& e : t_.equivalences()) emit_equivalence(e);
    for (const auto& [_, c] : t_.compounds()) emit_compound(c);
    if (o_.emit_altlabels) emit_altlabels();
    emit_classification();
    if (o_.include_metadata) g_.merge(dataset_metadata(p_, o_.metadata));
    return std::move(g_);
  }

 private:
  Iri pivot_label(const TermId& id) const { return label_iri(p_, id, t_.pivot()); }

  void emit_term(const Term& term) {
    const bool descriptor = term.kind == TermKind::Descriptor;
    const Iri subject = concept_iri(p_, term.id);
    if (descriptor) {
      g_.insert(subject, type_, concept_);
      g_.insert(subject, type_, ext_term(p_, ext::Descriptor));
    }
    const Iri pivot = pivot_label(term.id);
    const Iri has_translation = ext_term(p_, ext::hasTranslation);
    const Iri is_translation_of = ext_term(p_, ext::isTranslationOf);
    for (const auto& [lang, text] : term.labels) {
      const Iri label = label_iri(p_, term.id, lang);
      const Literal literal(text, lang.str());
      if (descriptor) {
        g_.insert(subject, pref_label_, literal);
        g_.insert(subject, xl_pref_label_, label);
      }
      g_.insert(label, type_, xl_label_);
      g_.insert(label, literal_form_, literal);
      if (lang != t_.pivot()) {
        g_.insert(pivot, has_translation, label);
        g_.insert(label, is_translation_of, pivot);
      }
    }
  }

  void emit_semantic(const SemanticRelation& r) {
    static const Iri broader = skos("broader");
    static const Iri narrower = skos("narrower");
    static const Iri related = skos("related");
    const Iri& p = r.kind == SemanticKind::Broader ? broader : r.kind == SemanticKind::Narrower ? narrower : related;
    g_.insert(concept_iri(p_, r.source), p, concept_iri(p_, r.target));
  }

  void emit_equivalence(const EquivalenceRelation& e) {
    const Iri node = equivalence_iri(p_, e);
    const Iri preferred = pivot_label(e.preferred);
    const Iri non_preferred = pivot_label(e.non_preferred);
    const Iri part_of = ext_term(p_, ext::isPartOfEquivalenceRelationship);
    g_.insert(node, type_, ext_term(p_, ext::EquivalenceRelationship));
    g_.insert(node, ext_term(p_, ext::use), preferred);
    g_.insert(node, ext_term(p_, ext::usedFor), non_preferred);
    g_.insert(preferred, part_of, node);
    g_.insert(non_preferred, part_of, node);
  }

  void emit_compound(const CompoundEquivalenceRelation& c) {
    const Iri node = compound_iri(p_, c.group_key);
    const Iri non_preferred = pivot_label(c.non_preferred);
    const Iri part_of = ext_term(p_, ext::isPartOfCompoundEquivalence);
    const Iri component = ext_term(p_, ext::preferredTermComponent);
    g_.insert(node, type_, ext_term(p_, ext::CompoundEquivalence));
    g_.insert(node, ext_term(p_, ext::compoundNonPreferredTerm), non_preferred);
    g_.insert(non_preferred, part_of, node);
    for (const auto& id : c.components) {
      const Iri label = pivot_label(id);
      g_.insert(node, component, label);
      g_.insert(label, part_of, node);
    }
  }

  // Plain non-descriptors redirected to exactly one descriptor become
  // alternative labels of it. AD terms and compound redirects never do.
  void emit_altlabels() {
    for (const auto& [id, term] : t_.terms()) {
      if (term.kind != TermKind::NonDescriptor) continue;
      const auto eqs = t_.equivalences_of(id);
      if (eqs.size() != 1 || !t_.compounds_of(id).empty()) continue;
      const Iri subject = concept_iri(p_, eqs.front()->preferred);
      for (const auto& [lang, text] : term.labels) {
        g_.insert(subject, xl_alt_label_, label_iri(p_, id, lang));
        g_.insert(subject, alt_label_, Literal(text, lang.str()));
      }
    }
  }

  void emit_classification() {
    const Iri notation = skos("notation");
    const Iri broader = skos("broader");
    const Iri narrower = skos("narrower");
    const Iri classification = ext_term(p_, ext::Classification);
    for (const auto& [code, node] : t_.classification()) {
      const Iri k = classification_iri(p_, code);
      g_.insert(k, type_, concept_);
      g_.insert(k, type_, classification);
      g_.insert(k, notation, Literal(code));
      for (const auto& [lang, text] : node.labels) g_.insert(k, pref_label_, Literal(text, lang.str()));
      if (node.parent) {
        const Iri parent = classification_iri(p_, *node.parent);
        g_.insert(k, broader, parent);
        g_.insert(parent, narrower, k);
      }
    }
    const Iri subject = classification_assignment_property();
    for (const auto& [id, term] : t_.terms()) {
      for (const auto& code : term.classification_codes) {
        g_.insert(concept_iri(p_, id), subject, classification_iri(p_, code));
      }
    }
  }

  const Thesaurus& t_;
  const UriPolicy& p_;
  const ConversionOptions& o_;
  Graph g_;
  const Iri type_, concept_, pref_label_, alt_label_, xl_label_, xl_pref_label_, xl_alt_label_, literal_form_;
};

}  // namespace

Graph to_skos(const Thesaurus& thesaurus, const UriPolicy& policy, const ConversionOptions& options) {
  return SkosEmitter(thesaurus, policy, options).run();
}

Graph dataset_metadata(const UriPolicy& policy, const DatasetMetadata& m) {
  Graph g;
  g.bind("thesoz", policy.ext());
  const Iri& s = policy.base();
  const Iri license(m.license);
  g.insert(s, rdf_type(), skos("ConceptScheme"));
  g.insert(s, rdf::term(rdf::ns::dct, "title"), Literal(m.title, m.title_language));
  g.insert(s, rdf::term(rdf::ns::dct, "license"), license);
  g.insert(s, rdf::term(rdf::ns::cc, "license"), license);
  if (m.modified) {
    g.insert(s, rdf::term(rdf::ns::dct, "modified"), Literal(*m.modified, rdf::term(rdf::ns::xsd, "date")));
  }
  return g;
}

Graph emit_extension_schema(const UriPolicy& policy) {
  Graph g;
  g.bind("thesoz", policy.ext());
  const Iri type = rdf_type();
  const Iri rdfs_class = rdf::term(rdf::ns::rdfs, "Class");
  const Iri rdf_property = rdf::term(rdf::ns::rdf, "Property");
  const Iri sub_class = rdf::term(rdf::ns::rdfs, "subClassOf");
  const Iri sub_property = rdf::term(rdf::ns::rdfs, "subPropertyOf");
  const Iri domain = rdf::term(rdf::ns::rdfs, "domain");
  const Iri range = rdf::term(rdf::ns::rdfs, "range");
  const Iri label = rdf::term(rdf::ns::rdfs, "label");
  const Iri label_relation = skosxl("labelRelation");
  const Iri xl_label = skosxl("Label");
  auto x = [&](std::string_view name) { return ext_term(policy, name); };

  for (auto name : ext::kClasses) {
    g.insert(x(name), type, rdfs_class);
    g.insert(x(name), label, Literal(std::string(name), "en"));
  }
  for (auto name : ext::kProperties) {
    g.insert(x(name), type, rdf_property);
    g.insert(x(name), label, Literal(std::string(name), "en"));
  }

  g.insert(x(ext::Descriptor), sub_class, skos("Concept"));
  g.insert(x(ext::Classification), sub_class, skos("Concept"));
  g.insert(x(ext::EquivalenceRelationship), sub_class, xl_label);
  g.insert(x(ext::CompoundEquivalence), sub_class, xl_label);

  for (auto name : {ext::use, ext::usedFor, ext::preferredTermComponent, ext::compoundNonPreferredTerm,
                    ext::hasTranslation}) {
    g.insert(x(name), sub_property, label_relation);
  }
  g.insert(x(ext::isTranslationOf), rdf::term(rdf::ns::owl, "inverseOf"), x(ext::hasTranslation));

  g.insert(x(ext::isPartOfEquivalenceRelationship), domain, xl_label);
  g.insert(x(ext::isPartOfEquivalenceRelationship), range, x(ext::EquivalenceRelationship));
  g.insert(x(ext::isPartOfCompoundEquivalence), domain, xl_label);
  g.insert(x(ext::isPartOfCompoundEquivalence), range, x(ext::CompoundEquivalence));
  return g;
}

Iri linkset_iri(const UriPolicy& policy, const LinksetSummary& l) {
  return under(policy.base(), "linkset", {l.target_dataset.str(), l.predicate.str()});
}

Graph emit_void(const Graph& graph, const std::vector<LinksetSummary>& linksets, const UriPolicy& policy) {
  Graph g;
  g.bind("thesoz", policy.ext());
  const Iri type = rdf_type();
  const Iri integer = rdf::term(rdf::ns::xsd, "integer");
  const Iri triples = rdf::term(rdf::ns::void_, "triples");
  const Iri& dataset = policy.base();
  g.insert(dataset, type, rdf::term(rdf::ns::void_, "Dataset"));
  g.insert(dataset, triples, Literal(std::to_string(graph.size()), integer));
  for (const auto& l : linksets) {
    const Iri ls = linkset_iri(policy, l);
    g.insert(ls, type, rdf::term(rdf::ns::void_, "Linkset"));
    g.insert(ls, rdf::term(rdf::ns::void_, "subjectsTarget"), dataset);
    g.insert(ls, rdf::term(rdf::ns::void_, "objectsTarget"), l.target_dataset);
    g.insert(ls, rdf::term(rdf::ns::void_, "linkPredicate"), l.predicate);
    g.insert(ls, triples, Literal(std::to_string(l.count), integer));
    g.insert(dataset, rdf::term(rdf::ns::void_, "subset"), ls);
  }
  return g;
}

}  // namespace skoskit::skos
