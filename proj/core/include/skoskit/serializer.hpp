#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "skoskit/rdf.hpp"

namespace skoskit::serial {

enum class Format { NTriplesCanonical, Turtle };

struct SerializationConfig {
  Format format = Format::NTriplesCanonical;
  /// Turtle only; replaces the graph's own namespace table when set.
  std::optional<rdf::NamespaceTable> prefixes;
};

/// Canonical N-Triples: one triple per line, lines sorted by byte order, LF
/// endings, trailing newline after the last line; empty graph yields "".
/// Turtle: subjects grouped and ordered canonically, prefixed names where the
/// local part is a plain name; re-parses to the same triple set.
std::string emit(const rdf::Graph& graph, const SerializationConfig& config = {});

std::string to_ntriples(const rdf::Graph& graph);
std::string to_turtle(const rdf::Graph& graph, const rdf::NamespaceTable& prefixes);

/// "<s> <p> <o> ." without the newline.
std::string ntriples_line(const rdf::Triple& triple);
std::string ntriples_term(const rdf::Object& term);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Full N-Triples grammar minus blank nodes (rejected with a ParseError).
/// Comments and blank lines are skipped.
rdf::Graph parse_ntriples(std::string_view input);

/// The Turtle subset that to_turtle() produces: @prefix/PREFIX directives,
/// IRIs, prefixed names, `a`, predicate lists (;), object lists (,), and
/// quoted literals with language tags or datatypes.
rdf::Graph parse_turtle(std::string_view input);

}  // namespace skoskit::serial
