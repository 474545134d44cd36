#include "skoskit/rdf.hpp"

#include <algorithm>
#include <stdexcept>

#include "skoskit/model.hpp"
#include "skoskit/text.hpp"

namespace skoskit::rdf {

bool Iri::is_valid(std::string_view v) {
  const auto colon = v.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == v.size()) return false;
  const auto is_alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  if (!is_alpha(v[0])) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    const char c = v[i];
    if (!(is_alpha(c) || (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.')) return false;
  }
  for (unsigned char c : v) {
    if (c <= 0x20 || c == 0x7F) return false;
    switch (c) {
      case '<': case '>': case '"': case '{': case '}': case '|': case '^': case '`': case '\\':
        return false;
      default: break;
    }
  }
  return text::is_valid_utf8(v);
}

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (!is_valid(value_)) throw std::invalid_argument("not an absolute IRI: '" + value_ + "'");
}

namespace {

void check_lexical(const std::string& s) {
  if (!text::is_valid_utf8(s)) throw std::invalid_argument("literal is not valid UTF-8");
}

}  // namespace

Literal::Literal(std::string lexical) : lexical_(std::move(lexical)) { check_lexical(lexical_); }

Literal::Literal(std::string lexical, std::string language) : lexical_(std::move(lexical)) {
  check_lexical(lexical_);
  if (!language.empty()) language_ = LanguageTag(language).str();
}

Literal::Literal(std::string lexical, Iri datatype) : lexical_(std::move(lexical)) {
  check_lexical(lexical_);
  if (datatype != term(ns::xsd, "string")) datatype_ = std::move(datatype);
}

Graph::Graph() : namespaces_(standard_namespaces()) {}

bool Graph::insert(Triple t) { return triples_.insert(std::move(t)).second; }

void Graph::merge(const Graph& other) {
  triples_.insert(other.triples_.begin(), other.triples_.end());
  for (const auto& [prefix, iri] : other.namespaces_) namespaces_.insert_or_assign(prefix, iri);
}

Iri term(std::string_view ns, std::string_view local) {
  std::string s;
  s.reserve(ns.size() + local.size());
  s.append(ns).append(local);
  return Iri(std::move(s));
}

NamespaceTable standard_namespaces() {
  NamespaceTable t;
  t.emplace("rdf", Iri(std::string(ns::rdf)));
  t.emplace("rdfs", Iri(std::string(ns::rdfs)));
  t.emplace("xsd", Iri(std::string(ns::xsd)));
  t.emplace("owl", Iri(std::string(ns::owl)));
  t.emplace("skos", Iri(std::string(ns::skos)));
  t.emplace("skosxl", Iri(std::string(ns::skosxl)));
  t.emplace("dct", Iri(std::string(ns::dct)));
  t.emplace("void", Iri(std::string(ns::void_)));
  t.emplace("cc", Iri(std::string(ns::cc)));
  return t;
}

}  // namespace skoskit::rdf
