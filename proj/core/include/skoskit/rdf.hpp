#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>

namespace skoskit::rdf {

/// Absolute IRI: a scheme followed by ':' and at least one character, with
/// none of the characters N-Triples forbids inside IRIREF.
class Iri {
 public:
  /// Throws std::invalid_argument if `value` is not an absolute IRI.
  explicit Iri(std::string value);

  static bool is_valid(std::string_view value);

  const std::string& str() const { return value_; }

  friend auto operator<=>(const Iri&, const Iri&) = default;

 private:
  std::string value_;
};

/// Lexical form plus either a language tag or a datatype (never both).
/// xsd:string datatypes are dropped, making plain and xsd:string literals identical.
class Literal {
 public:
  explicit Literal(std::string lexical);
  Literal(std::string lexical, std::string language);
  Literal(std::string lexical, Iri datatype);

  const std::string& lexical() const { return lexical_; }
  /// Lowercased language tag, empty when absent.
  const std::string& language() const { return language_; }
  const std::optional<Iri>& datatype() const { return datatype_; }

  friend auto operator<=>(const Literal&, const Literal&) = default;

 private:
  std::string lexical_;
  std::string language_;
  std::optional<Iri> datatype_;
};

using Object = std::variant<Iri, Literal>;

struct Triple {
  Iri subject;
  Iri predicate;
  Object object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

using NamespaceTable = std::map<std::string, Iri>;

/// Set of triples plus the prefix table used for Turtle output.
class Graph {
 public:
  Graph();

  bool insert(Triple t);
  void insert(const Iri& s, const Iri& p, Object o) { insert(Triple{s, p, std::move(o)}); }
  void merge(const Graph& other);

  const std::set<Triple>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  bool contains(const Triple& t) const { return triples_.contains(t); }

  const NamespaceTable& namespaces() const { return namespaces_; }
  void bind(std::string prefix, Iri ns) { namespaces_.insert_or_assign(std::move(prefix), std::move(ns)); }

  /// Triple-set equality; the prefix table is presentation only.
  friend bool operator==(const Graph& a, const Graph& b) { return a.triples_ == b.triples_; }

 private:
  std::set<Triple> triples_;
  NamespaceTable namespaces_;
};

namespace ns {
inline constexpr std::string_view rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view owl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view skos = "http://www.w3.org/2004/02/skos/core#";
inline constexpr std::string_view skosxl = "http://www.w3.org/2008/05/skos-xl#";
inline constexpr std::string_view dct = "http://purl.org/dc/terms/";
inline constexpr std::string_view void_ = "http://rdfs.org/ns/void#";
inline constexpr std::string_view cc = "http://creativecommons.org/ns#";
}  // namespace ns

/// Concatenates a namespace and a local name.
Iri term(std::string_view ns, std::string_view local);

/// Standard prefixes (rdf, rdfs, xsd, owl, skos, skosxl, dct, void, cc).
NamespaceTable standard_namespaces();

}  // namespace skoskit::rdf
