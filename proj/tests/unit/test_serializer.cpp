#include <gtest/gtest.h>

#include <algorithm>

#include "generators.hpp"
#include "skoskit/serializer.hpp"

using namespace skoskit;
using rdf::Iri;
using rdf::Literal;

namespace {

const Iri s("http://example.org/s");
const Iri p("http://example.org/p");

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t nl; (nl = text.find('\n', start)) != std::string::npos; start = nl + 1) {
    out.push_back(text.substr(start, nl - start));
  }
  return out;
}

}  // namespace

TEST(NTriples, EscapesLiterals) {
  EXPECT_EQ(serial::ntriples_term(Literal("a\"b\\c\nd\te\r")), "\"a\\\"b\\\\c\\nd\\te\\r\"");
  EXPECT_EQ(serial::ntriples_term(Literal(std::string("x\x01y"))), "\"x\\u0001y\"");
  EXPECT_EQ(serial::ntriples_term(Literal("Qualität", "de")), "\"Qualität\"@de");
  EXPECT_EQ(serial::ntriples_term(Literal("7", rdf::term(rdf::ns::xsd, "integer"))),
            "\"7\"^^<http://www.w3.org/2001/XMLSchema#integer>");
  EXPECT_EQ(serial::ntriples_line({s, p, Iri("http://example.org/o")}),
            "<http://example.org/s> <http://example.org/p> <http://example.org/o> .");
}

TEST(NTriples, EmptyGraphIsEmptyString) { EXPECT_EQ(serial::to_ntriples(rdf::Graph()), ""); }

TEST(NTriples, LinesAreSortedAndNewlineTerminated) {
  testkit::Rng rng(3);
  const auto text = serial::to_ntriples(testkit::random_graph(rng, 200));
  ASSERT_FALSE(text.empty());
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(text.find('\r'), std::string::npos);
  const auto ls = lines(text);
  EXPECT_TRUE(std::is_sorted(ls.begin(), ls.end()));
  EXPECT_EQ(std::adjacent_find(ls.begin(), ls.end()), ls.end());
}

TEST(NTriples, RejectsBlankNodes) {
  EXPECT_THROW(serial::parse_ntriples("_:b1 <http://example.org/p> <http://example.org/o> .\n"),
               serial::ParseError);
  EXPECT_THROW(serial::parse_ntriples("<http://example.org/s> <http://example.org/p> _:x .\n"),
               serial::ParseError);
}

TEST(NTriples, ReportsLineOfError) {
  try {
    serial::parse_ntriples("# comment\n\n<http://example.org/s> <http://example.org/p> \"open .\n");
    FAIL();
  } catch (const serial::ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(NTriples, ParsesEscapesAndComments) {
  const auto g = serial::parse_ntriples(
      "# c\n<http://example.org/s> <http://example.org/p> \"\\u00E4\\U0001F600\\\"\"@DE .\n\n");
  ASSERT_EQ(g.size(), 1u);
  EXPECT_TRUE(g.contains({s, p, Literal("ä\xF0\x9F\x98\x80\"", "de")}));
}

TEST(SerializerProperty, NTriplesRoundTrip) {
  testkit::Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto g = testkit::random_graph(rng, 1 + i * 7);
    EXPECT_EQ(serial::parse_ntriples(serial::to_ntriples(g)).triples(), g.triples());
  }
}

TEST(SerializerProperty, TurtleRoundTrip) {
  testkit::Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    const auto g = testkit::random_graph(rng, 1 + i * 7);
    const auto ttl = serial::emit(g, {serial::Format::Turtle, rdf::standard_namespaces()});
    EXPECT_EQ(serial::parse_turtle(ttl).triples(), g.triples()) << ttl;
  }
}

TEST(SerializerProperty, CanonicalFormIsIdempotent) {
  testkit::Rng rng(13);
  for (int i = 0; i < 20; ++i) {
    const auto once = serial::to_ntriples(testkit::random_graph(rng, 60));
    EXPECT_EQ(serial::to_ntriples(serial::parse_ntriples(once)), once);
  }
}

TEST(SerializerProperty, InsertionOrderDoesNotMatter) {
  testkit::Rng rng(14);
  const auto g = testkit::random_graph(rng, 100);
  std::vector<rdf::Triple> shuffled(g.triples().begin(), g.triples().end());
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  rdf::Graph h;
  for (const auto& t : shuffled) h.insert(t);
  EXPECT_EQ(serial::to_ntriples(h), serial::to_ntriples(g));
  const auto ns = rdf::standard_namespaces();
  EXPECT_EQ(serial::to_turtle(h, ns), serial::to_turtle(g, ns));
}

TEST(Turtle, UsesPrefixesAndTypeShorthand) {
  rdf::Graph g;
  g.insert(s, rdf::term(rdf::ns::rdf, "type"), rdf::term(rdf::ns::skos, "Concept"));
  g.insert(s, rdf::term(rdf::ns::skos, "prefLabel"), Literal("x", "en"));
  const auto ttl = serial::to_turtle(g, rdf::standard_namespaces());
  EXPECT_NE(ttl.find("@prefix skos:"), std::string::npos);
  EXPECT_NE(ttl.find(" a skos:Concept"), std::string::npos);
  EXPECT_NE(ttl.find("skos:prefLabel \"x\"@en"), std::string::npos);
}

TEST(Turtle, ParsesObjectListsAndPrefixDirective) {
  const auto g = serial::parse_turtle(
      "PREFIX ex: <http://example.org/>\n"
      "ex:s ex:p ex:a, ex:b ;\n  ex:q \"v\"^^ex:t .\n");
  EXPECT_EQ(g.size(), 3u);
  EXPECT_TRUE(g.contains({s, p, Iri("http://example.org/b")}));
  EXPECT_TRUE(g.contains({s, Iri("http://example.org/q"), Literal("v", Iri("http://example.org/t"))}));
}
