// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is 0 only when all criteria pass.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "generators.hpp"
#include "oracles.hpp"
#include "skoskit/ingest.hpp"
#include "skoskit/linker.hpp"
#include "skoskit/retrieval.hpp"
#include "skoskit/serializer.hpp"
#include "skoskit/skos_graph.hpp"
#include "skoskit/text.hpp"

#if SKOSKIT_WITH_CLI
#include <unistd.h>

#include "cli.hpp"
#endif

using namespace skoskit;
using rdf::Iri;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = SKOSKIT_FIXTURES;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail.clear();
    if (!detail.empty()) detail += "; ";
    detail += what;
    pass = false;
  }
  void note(const std::string& s) {
    if (!pass) return;
    if (!detail.empty()) detail += "; ";
    detail += s;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int digits = 3) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

Thesaurus fixture(const char* name) {
  auto r = ingest::load_bundle(ingest::BundlePaths::in_directory(kFixtures / name));
  if (!r.thesaurus) throw std::runtime_error(std::string(name) + ": " + r.diagnostics.to_text());
  return std::move(*r.thesaurus);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const Iri& type() {
  static const Iri t = rdf::term(rdf::ns::rdf, "type");
  return t;
}

std::vector<Iri> subjects(const rdf::Graph& g, const Iri& p, const rdf::Object& o) {
  std::vector<Iri> out;
  for (const auto& t : g.triples()) {
    if (t.predicate == p && t.object == o) out.push_back(t.subject);
  }
  return out;
}

std::vector<Iri> iri_objects(const rdf::Graph& g, const Iri& s, const Iri& p) {
  std::vector<Iri> out;
  for (const auto& t : g.triples()) {
    if (t.subject == s && t.predicate == p) {
      if (const auto* iri = std::get_if<Iri>(&t.object)) out.push_back(*iri);
    }
  }
  return out;
}

// The label resource whose literal form is `text`@`lang`, if exactly one exists.
std::optional<Iri> label_with(const rdf::Graph& g, const std::string& text, const std::string& lang) {
  const auto found = subjects(g, rdf::term(rdf::ns::skosxl, "literalForm"), rdf::Literal(text, lang));
  if (found.size() != 1) return std::nullopt;
  return found[0];
}

// Pivot label a translated label belongs to (itself when it is the pivot).
Iri pivot_of(const rdf::Graph& g, const skos::UriPolicy& p, const Iri& label) {
  const auto up = iri_objects(g, label, skos::ext_term(p, skos::ext::isTranslationOf));
  return up.size() == 1 ? up[0] : label;
}

#if SKOSKIT_WITH_CLI
struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = fs::temp_directory_path() / ("skoskit_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}
#endif

// 1 --------------------------------------------------------------------------

Outcome fixture_fidelity() {
  Outcome o;
  const auto start = Clock::now();
  const skos::UriPolicy p;
  const auto g = skos::to_skos(fixture("committee"), p);

  const auto committee = label_with(g, "committee", "en");
  o.require(committee.has_value(), "no unique \"committee\"@en label");
  if (!committee) return o;
  const Iri anchor = pivot_of(g, p, *committee);

  const auto eqrels = subjects(g, skos::ext_term(p, skos::ext::usedFor), anchor);
  const std::set<Iri> distinct(eqrels.begin(), eqrels.end());
  std::size_t typed = 0;
  for (const auto& e : distinct) typed += g.contains({e, type(), skos::ext_term(p, skos::ext::EquivalenceRelationship)});
  o.require(eqrels.size() == 4 && distinct.size() == 4 && typed == 4,
            "usedFor edges " + std::to_string(eqrels.size()) + " from " + std::to_string(typed) +
                " EquivalenceRelationship nodes");

  const auto compounds = subjects(g, skos::ext_term(p, skos::ext::compoundNonPreferredTerm), anchor);
  o.require(compounds.size() == 1, "compoundNonPreferredTerm edges " + std::to_string(compounds.size()));
  if (compounds.size() == 1) {
    std::set<Iri> components;
    for (const auto& c : iri_objects(g, compounds[0], skos::ext_term(p, skos::ext::preferredTermComponent))) {
      components.insert(c);
    }
    std::set<Iri> expected;
    for (const char* word : {"product", "quality"}) {
      if (auto l = label_with(g, word, "en")) expected.insert(pivot_of(g, p, *l));
    }
    o.require(expected.size() == 2 && components == expected, "compound components are not {product, quality}");
  }

  const auto golden = slurp(kFixtures / "committee.golden.nt");
  o.require(serial::to_ntriples(g) == golden, "library output differs from golden file");
#if SKOSKIT_WITH_CLI
  const auto out = (scratch() / "committee.nt").string();
  const auto r = cli({"convert", "--in", (kFixtures / "committee").string(), "--out", out});
  o.require(r.code == 0 && slurp(out) == golden, "CLI convert differs from golden file (exit " + std::to_string(r.code) + ")");
#endif
  const double t = seconds_since(start);
  o.require(t < 1.0, "runtime " + fmt(t) + " s >= 1 s");
  o.note("4 usedFor, 1 compound {product, quality}, golden " + std::to_string(g.size()) + " triples byte-equal");
  return o;
}

// 2 --------------------------------------------------------------------------

Outcome compound_pattern() {
  Outcome o;
  const auto start = Clock::now();
  const skos::UriPolicy p;
  const auto g = skos::to_skos(fixture("university_ranking"), p);
  const auto nodes = subjects(g, type(), skos::ext_term(p, skos::ext::CompoundEquivalence));
  o.require(nodes.size() == 1, std::to_string(nodes.size()) + " CompoundEquivalence nodes");
  if (nodes.size() != 1) return o;
  const auto np = iri_objects(g, nodes[0], skos::ext_term(p, skos::ext::compoundNonPreferredTerm));
  const auto comps = iri_objects(g, nodes[0], skos::ext_term(p, skos::ext::preferredTermComponent));
  std::size_t other = 0;
  for (const auto& t : g.triples()) {
    if (t.subject == nodes[0] && t.predicate != type() &&
        t.predicate != skos::ext_term(p, skos::ext::compoundNonPreferredTerm) &&
        t.predicate != skos::ext_term(p, skos::ext::preferredTermComponent)) {
      ++other;
    }
  }
  o.require(np.size() == 1 && comps.size() == 2 && other == 0,
            "outgoing edges " + std::to_string(np.size()) + " + " + std::to_string(comps.size()) + " + " +
                std::to_string(other) + " other");
  const double t = seconds_since(start);
  o.require(t < 1.0, "runtime " + fmt(t) + " s >= 1 s");
  o.note("1 compoundNonPreferredTerm + 2 preferredTermComponent");
  return o;
}

// 3 --------------------------------------------------------------------------

Outcome schema_completeness() {
  Outcome o;
  const skos::UriPolicy p;
  const auto g = skos::emit_extension_schema(p);
  const auto x = [&](std::string_view name) { return skos::ext_term(p, name); };
  std::size_t declared = 0;
  for (auto name : skos::ext::kClasses) declared += g.contains({x(name), type(), rdf::term(rdf::ns::rdfs, "Class")});
  for (auto name : skos::ext::kProperties) {
    declared += g.contains({x(name), type(), rdf::term(rdf::ns::rdf, "Property")});
  }
  o.require(declared == 12, std::to_string(declared) + " of 12 terms declared");

  const Iri sub_class = rdf::term(rdf::ns::rdfs, "subClassOf");
  const Iri sub_property = rdf::term(rdf::ns::rdfs, "subPropertyOf");
  const Iri concept_class = rdf::term(rdf::ns::skos, "Concept");
  const Iri label_class = rdf::term(rdf::ns::skosxl, "Label");
  const std::vector<rdf::Triple> axioms = {
      {x(skos::ext::Descriptor), sub_class, concept_class},
      {x(skos::ext::Classification), sub_class, concept_class},
      {x(skos::ext::EquivalenceRelationship), sub_class, label_class},
      {x(skos::ext::CompoundEquivalence), sub_class, label_class},
      {x(skos::ext::use), sub_property, rdf::term(rdf::ns::skosxl, "labelRelation")},
      {x(skos::ext::usedFor), sub_property, rdf::term(rdf::ns::skosxl, "labelRelation")},
      {x(skos::ext::preferredTermComponent), sub_property, rdf::term(rdf::ns::skosxl, "labelRelation")},
      {x(skos::ext::compoundNonPreferredTerm), sub_property, rdf::term(rdf::ns::skosxl, "labelRelation")},
      {x(skos::ext::hasTranslation), sub_property, rdf::term(rdf::ns::skosxl, "labelRelation")},
      {x(skos::ext::isTranslationOf), rdf::term(rdf::ns::owl, "inverseOf"), x(skos::ext::hasTranslation)},
      {x(skos::ext::isPartOfEquivalenceRelationship), rdf::term(rdf::ns::rdfs, "domain"), label_class},
      {x(skos::ext::isPartOfEquivalenceRelationship), rdf::term(rdf::ns::rdfs, "range"),
       x(skos::ext::EquivalenceRelationship)},
      {x(skos::ext::isPartOfCompoundEquivalence), rdf::term(rdf::ns::rdfs, "domain"), label_class},
      {x(skos::ext::isPartOfCompoundEquivalence), rdf::term(rdf::ns::rdfs, "range"),
       x(skos::ext::CompoundEquivalence)},
  };
  std::size_t present = 0;
  for (const auto& a : axioms) present += g.contains(a);
  o.require(present == axioms.size(),
            std::to_string(present) + " of " + std::to_string(axioms.size()) + " axioms present");
  o.note("12 terms, " + std::to_string(present) + " axioms");
  return o;
}

// 4 --------------------------------------------------------------------------

Outcome serialization_round_trip() {
  Outcome o;
  const auto start = Clock::now();
  testkit::Rng rng(4004);
  std::uniform_int_distribution<std::size_t> size(0, 80);
  const auto ns = rdf::standard_namespaces();
  std::size_t bad_nt = 0, bad_ttl = 0, not_idempotent = 0;
  constexpr int kGraphs = 1000;
  for (int i = 0; i < kGraphs; ++i) {
    const auto g = testkit::random_graph(rng, size(rng));
    const auto nt = serial::to_ntriples(g);
    const auto ttl = serial::to_turtle(g, ns);
    try {
      const auto back = serial::parse_ntriples(nt);
      bad_nt += back.triples() != g.triples();
      not_idempotent += serial::to_ntriples(back) != nt;
    } catch (const std::exception&) {
      ++bad_nt;
    }
    try {
      const auto back = serial::parse_turtle(ttl);
      bad_ttl += back.triples() != g.triples();
      not_idempotent += serial::to_turtle(back, ns) != ttl;
    } catch (const std::exception&) {
      ++bad_ttl;
    }
  }
  o.require(bad_nt == 0, std::to_string(bad_nt) + " N-Triples round trips failed");
  o.require(bad_ttl == 0, std::to_string(bad_ttl) + " Turtle round trips failed");
  o.require(not_idempotent == 0, std::to_string(not_idempotent) + " non-idempotent emits");
  const double t = seconds_since(start);
  o.require(t < 30.0, "runtime " + fmt(t) + " s >= 30 s");
  o.note(std::to_string(kGraphs) + " graphs, nt and ttl");
  return o;
}

// 5 --------------------------------------------------------------------------

Outcome levenshtein_oracle() {
  Outcome o;
  const auto start = Clock::now();
  std::vector<std::u32string> words{U""};
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (words[i].size() < 6) {
      words.push_back(words[i] + U'a');
      words.push_back(words[i] + U'b');
    }
  }
  std::size_t mismatches = 0, pairs = 0, axiom_failures = 0;
  for (const auto& a : words) {
    for (const auto& b : words) {
      const auto d = link::levenshtein(a, b);
      mismatches += d != testkit::recursive_levenshtein(a, b);
      axiom_failures += d != link::levenshtein(b, a) || ((d == 0) != (a == b));
      ++pairs;
    }
  }
  testkit::Rng rng(5005);
  constexpr int kRandom = 10000;
  for (int i = 0; i < kRandom; ++i) {
    const auto a = testkit::random_u32(rng, 10), b = testkit::random_u32(rng, 10), c = testkit::random_u32(rng, 10);
    const auto ab = link::levenshtein(a, b);
    mismatches += ab != testkit::recursive_levenshtein(a, b);
    axiom_failures += ab != link::levenshtein(b, a);
    axiom_failures += (ab == 0) != (a == b);
    axiom_failures += link::levenshtein(a, c) > ab + link::levenshtein(b, c);
    ++pairs;
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " oracle mismatches");
  o.require(axiom_failures == 0, std::to_string(axiom_failures) + " metric axiom failures");
  const double t = seconds_since(start);
  o.require(t < 30.0, "runtime " + fmt(t) + " s >= 30 s");
  o.note(std::to_string(pairs) + " pairs");
  return o;
}

// 6 --------------------------------------------------------------------------

struct PlantedFixture {
  Thesaurus thesaurus;
  link::TargetVocabulary target;
  // (source concept, target) -> expected match type, identical in both languages
  std::map<std::pair<Iri, Iri>, link::MatchType> planted;
  std::size_t violations = 0;
};

std::string random_word(testkit::Rng& rng) {
  std::uniform_int_distribution<int> len(12, 18), letter(0, 25);
  std::string s(static_cast<std::size_t>(len(rng)), 'a');
  for (auto& c : s) c = static_cast<char>('a' + letter(rng));
  return s;
}

std::string near_variant(testkit::Rng& rng, std::string s) {
  std::uniform_int_distribution<std::size_t> pos(0, s.size() - 1);
  std::uniform_int_distribution<int> op(0, 2);
  const auto i = pos(rng);
  switch (op(rng)) {
    case 0: s[i] = static_cast<char>(s[i] == 'z' ? 'a' : s[i] + 1); break;
    case 1: s.insert(s.begin() + static_cast<std::ptrdiff_t>(i), 'q'); break;
    default: s.erase(i, 1); break;
  }
  return s;
}

PlantedFixture planted_fixture(std::size_t n, std::size_t exact, std::size_t near, double threshold) {
  testkit::Rng rng(6006);
  const std::vector<std::string> langs = {"de", "en"};
  std::map<std::string, std::vector<std::string>> source, target;
  for (const auto& l : langs) {
    for (std::size_t i = 0; i < n; ++i) source[l].push_back(random_word(rng));
    for (std::size_t i = 0; i < n; ++i) {
      if (i < exact) {
        auto s = source[l][i];
        s[0] = static_cast<char>(s[0] - 'a' + 'A');  // differs only by case
        target[l].push_back(s);
      } else if (i < exact + near) {
        target[l].push_back(near_variant(rng, source[l][i]));
      } else {
        target[l].push_back(random_word(rng));
      }
    }
  }

  PlantedFixture f{Thesaurus(), {"planted", Iri("http://target.example/"), {}}, {}, 0};
  ThesaurusParts parts;
  parts.languages = {LanguageTag("de"), LanguageTag("en")};
  parts.pivot = LanguageTag("de");
  for (std::size_t i = 0; i < n; ++i) {
    Term t{TermId("s" + std::to_string(i)), TermKind::Descriptor, {}, {}};
    for (const auto& l : langs) t.labels.emplace(LanguageTag(l), source[l][i]);
    parts.terms.push_back(std::move(t));
    const Iri iri("http://target.example/t" + std::to_string(i));
    for (const auto& l : langs) f.target.entries.push_back({iri, LanguageTag(l), target[l][i], true});
    if (i < exact + near) {
      f.planted[{skos::concept_iri({}, TermId("s" + std::to_string(i))), iri}] =
          i < exact ? link::MatchType::Exact : link::MatchType::Close;
    }
  }
  auto r = assemble(std::move(parts), {.require_classification = false});
  if (!r.ok()) throw std::logic_error("planted fixture did not assemble");
  f.thesaurus = std::move(*r.thesaurus);

  // Fixture contract, checked exhaustively: planted pairs within the
  // threshold, every other cross pair beyond it.
  for (const auto& l : langs) {
    std::vector<std::u32string> s32, t32;
    for (const auto& s : source[l]) s32.push_back(text::to_u32(text::fold(s)));
    for (const auto& t : target[l]) t32.push_back(text::to_u32(text::fold(t)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t longest = std::max(s32[i].size(), t32[j].size());
        const std::size_t budget = link::distance_budget(threshold, longest);
        const std::size_t d = link::bounded_levenshtein(s32[i], t32[j], budget);
        const bool is_planted = i == j && i < exact + near;
        const bool within = d <= budget;
        if (is_planted != within) ++f.violations;
        if (is_planted && (i < exact) != (d == 0)) ++f.violations;
      }
    }
  }
  return f;
}

Outcome linker_threshold() {
  Outcome o;
  const auto start = Clock::now();
  constexpr double kThreshold = 0.21;
  const auto f = planted_fixture(500, 50, 25, kThreshold);
  o.require(f.violations == 0, "fixture contract broken by " + std::to_string(f.violations) + " pairs");

  const unsigned n_workers = std::max(4u, std::thread::hardware_concurrency());
  for (const char* lang : {"de", "en"}) {
    link::DiscoveryOptions opt;
    opt.threshold = kThreshold;
    opt.language = LanguageTag(lang);
    opt.workers = 1;
    const auto links = link::discover_links(f.thesaurus, {}, f.target, opt);
    std::size_t found = 0, wrong_type = 0, false_links = 0;
    for (const auto& l : links) {
      const auto it = f.planted.find({l.source, l.target});
      if (it == f.planted.end()) {
        ++false_links;
      } else {
        ++found;
        wrong_type += it->second != l.match_type;
      }
    }
    const std::string tag = std::string(lang) + ": ";
    o.require(found == f.planted.size(),
              tag + "recall " + std::to_string(found) + "/" + std::to_string(f.planted.size()));
    o.require(false_links == 0, tag + std::to_string(false_links) + " false links");
    o.require(wrong_type == 0, tag + std::to_string(wrong_type) + " wrong match types");

    opt.prune = false;
    o.require(link::discover_links(f.thesaurus, {}, f.target, opt) == links, tag + "unpruned run differs");
    opt.prune = true;
    opt.workers = n_workers;
    o.require(link::discover_links(f.thesaurus, {}, f.target, opt) == links,
              tag + std::to_string(n_workers) + "-worker run differs");
  }
  o.note("recall 75/75, 0 false links in de and en; pruned == unpruned; 1 == " + std::to_string(n_workers) +
         " workers (" + fmt(seconds_since(start)) + " s)");
  return o;
}

// 7 --------------------------------------------------------------------------

Outcome mapping_validation() {
  Outcome o;
  const auto t = fixture("linked");
  const skos::UriPolicy p;
  const auto* egov = t.find(TermId("30006"));
  o.require(egov && egov->label(LanguageTag("en")) && *egov->label(LanguageTag("en")) == "Electronic Government",
            "fixture lacks \"Electronic Government\"");
  const auto imported = link::read_imported_mappings(kFixtures / "linked" / "egov_mappings.tsv", t, p);
  o.require(imported.diagnostics.ok(), "import diagnostics: " + imported.diagnostics.to_text());
  const auto report = link::validate_mappings(imported.links, t, p);
  bool egov_flagged = false;
  for (const auto& f : report.findings) {
    if (f.code == "SINGLE_TO_MULTIPLE" && f.source == skos::concept_iri(p, TermId("30006")) && f.targets.size() == 2) {
      egov_flagged = true;
    }
  }
  o.require(egov_flagged, "Electronic Government record not flagged SINGLE_TO_MULTIPLE");
  o.require(report.count("NONPREF_SOURCE") == 1,
            std::to_string(report.count("NONPREF_SOURCE")) + " NONPREF_SOURCE findings");
#if SKOSKIT_WITH_CLI
  const auto r = cli({"check-mappings", "--in", (kFixtures / "linked").string(), "--links",
                      (kFixtures / "linked" / "egov_mappings.tsv").string()});
  o.require(r.code == 2 && r.out.find("SINGLE_TO_MULTIPLE") != std::string::npos &&
                r.out.find("NONPREF_SOURCE") != std::string::npos,
            "CLI check-mappings exit " + std::to_string(r.code));
#endif
  o.note("SINGLE_TO_MULTIPLE and NONPREF_SOURCE raised");
  return o;
}

// 8 --------------------------------------------------------------------------

std::set<Iri> members(const retrieval::ExpansionResult& r) {
  std::set<Iri> out;
  for (const auto& item : r.expansion) out.insert(item.iri);
  return out;
}

Outcome expansion() {
  Outcome o;
  const auto t = fixture("linked");
  const skos::UriPolicy p;
  const auto links = link::links_from_graph(serial::parse_ntriples(slurp(kFixtures / "linked" / "links.nt")));
  std::size_t exact_from_qa = 0;
  for (const auto& l : links) {
    exact_from_qa += l.match_type == link::MatchType::Exact && l.source == skos::concept_iri(p, TermId("30001"));
  }
  o.require(exact_from_qa == 3, std::to_string(exact_from_qa) + " planted exactMatch links");

  const retrieval::LabelIndex index(t, p);
  const auto r = retrieval::expand(index, links, "quality assurance", std::nullopt);
  bool shape = r.expansion.size() == 4 && r.expansion[0].iri == skos::concept_iri(p, TermId("30001")) &&
               r.expansion[0].origin == retrieval::Origin::Self;
  for (std::size_t i = 1; shape && i < r.expansion.size(); ++i) {
    const auto& item = r.expansion[i];
    const bool linked_target = std::any_of(links.begin(), links.end(), [&](const auto& l) {
      return l.target == item.iri && l.match_type == link::MatchType::Exact;
    });
    shape = item.origin == retrieval::Origin::ExactMatch && linked_target;
  }
  o.require(shape, "expansion is not self + 3 exactMatch");

  retrieval::ExpansionOptions off;
  off.follow_exact = false;
  const auto bare = retrieval::expand(index, links, "quality assurance", std::nullopt, off);
  o.require(bare.expansion.size() == 1 && bare.expansion[0].origin == retrieval::Origin::Self,
            "options-off expansion has " + std::to_string(bare.expansion.size()) + " elements");

  // Monotonicity over random option subsets: adding options or depth never removes elements.
  testkit::Rng rng(8008);
  std::size_t checks = 0, breaches = 0;
  for (int round = 0; round < 6; ++round) {
    const auto th = testkit::random_thesaurus(rng, {.descriptors = 60, .broader = 70, .related = 25});
    const retrieval::LabelIndex idx(th, p);
    std::vector<link::MappingLink> random_links;
    std::vector<Iri> concepts(idx.descriptors().begin(), idx.descriptors().end());
    std::uniform_int_distribution<std::size_t> pick(0, concepts.size() - 1);
    for (int i = 0; i < 40; ++i) {
      const Iri target("http://external.example/x" + std::to_string(i));
      random_links.push_back({concepts[pick(rng)], target, link::MatchType::Exact, 0, link::Provenance::Imported,
                              link::dataset_of(target), {}});
    }
    std::uniform_int_distribution<unsigned> mask(0, 7), depth(1, 4);
    for (const auto& [id, term] : th.terms()) {
      const auto& q = term.labels.begin()->second;
      for (int trial = 0; trial < 4; ++trial) {
        const unsigned a = mask(rng), extra = mask(rng);
        const unsigned b = a | extra;
        const unsigned da = depth(rng), db = std::max(da, depth(rng));
        auto opts = [](unsigned m, unsigned d) {
          retrieval::ExpansionOptions e;
          e.follow_exact = m & 1;
          e.follow_narrower = m & 2;
          e.follow_related = m & 4;
          e.depth = d;
          return e;
        };
        const auto small = members(retrieval::expand(idx, random_links, q, std::nullopt, opts(a, da)));
        const auto large = members(retrieval::expand(idx, random_links, q, std::nullopt, opts(b, db)));
        breaches += !std::includes(large.begin(), large.end(), small.begin(), small.end());
        ++checks;
      }
    }
  }
  o.require(breaches == 0, std::to_string(breaches) + " monotonicity breaches");
#if SKOSKIT_WITH_CLI
  const auto c = cli({"expand", "--in", (kFixtures / "linked").string(), "--links",
                      (kFixtures / "linked" / "links.nt").string(), "--query", "quality assurance"});
  o.require(c.code == 0 && std::count(c.out.begin(), c.out.end(), '\n') == 4,
            "CLI expand exit " + std::to_string(c.code) + " output:\n" + c.out);
#endif
  o.note("self + 3 exactMatch; options-off self only; " + std::to_string(checks) + " monotonicity checks");
  return o;
}

// 9 --------------------------------------------------------------------------

Outcome coword_oracle() {
  Outcome o;
  testkit::Rng rng(9009);
  std::vector<Iri> pool;
  for (int i = 0; i < 15; ++i) pool.push_back(Iri("http://example.org/d" + std::to_string(i)));
  const std::set<Iri> known(pool.begin(), pool.end());
  std::uniform_int_distribution<std::size_t> docs(0, 20), per_doc(0, 5), pick(0, pool.size() - 1), k_pick(1, 16);
  constexpr int kCorpora = 600;
  std::size_t pair_mismatch = 0, rank_mismatch = 0, rankings = 0;
  for (int c = 0; c < kCorpora; ++c) {
    std::vector<retrieval::Document> corpus;
    for (std::size_t d = docs(rng); d > 0; --d) {
      retrieval::Document doc{"doc" + std::to_string(d), {}};
      for (std::size_t n = per_doc(rng); n > 0; --n) doc.descriptors.insert(pool[pick(rng)]);
      corpus.push_back(std::move(doc));
    }
    const auto brute = testkit::brute_force_coword(corpus);
    const auto matrix = retrieval::build_coword(corpus, known);
    pair_mismatch += matrix.pairs() != brute;
    for (const auto& seed : pool) {
      std::vector<retrieval::Recommendation> expected;
      for (const auto& [pair, count] : brute) {
        if (pair.first == seed) expected.push_back({pair.second, count});
        if (pair.second == seed) expected.push_back({pair.first, count});
      }
      std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
        return a.count != b.count ? a.count > b.count : a.iri < b.iri;
      });
      const std::size_t k = k_pick(rng);
      if (expected.size() > k) expected.resize(k, expected.front());
      rank_mismatch += retrieval::recommend(matrix, seed, k) != expected;
      ++rankings;
    }
  }
  o.require(pair_mismatch == 0, std::to_string(pair_mismatch) + " corpora with wrong pair counts");
  o.require(rank_mismatch == 0, std::to_string(rank_mismatch) + " rankings differ from brute force");
  o.note(std::to_string(kCorpora) + " corpora, " + std::to_string(rankings) + " rankings");
  return o;
}

// 10 -------------------------------------------------------------------------

Outcome scale_smoke() {
  Outcome o;
  testkit::Rng rng(1010);
  testkit::ThesaurusShape shape;
  shape.descriptors = 8000;
  shape.non_descriptors = 3600;
  shape.ad_terms = 400;
  shape.broader = 8600;
  shape.related = 3000;
  shape.notations = 400;
  shape.compound_share = 0.1;
  shape.translation_rate = 0.9;
  shape.word_labels = true;
  auto parts = testkit::random_parts(rng, shape);
  const std::size_t relations = parts.semantic.size() + parts.equivalences.size() + parts.compounds.size();
  const std::size_t terms = parts.terms.size();
  auto assembled = assemble(std::move(parts));
  o.require(assembled.ok(), "synthetic thesaurus did not assemble");
  if (!assembled.ok()) return o;
  o.require(terms == 12000 && relations >= 16000,
            std::to_string(terms) + " terms, " + std::to_string(relations) + " relations");

  const auto dir = fs::temp_directory_path() / "skoskit_scale_bundle";
  fs::remove_all(dir);
  ingest::export_bundle(*assembled.thesaurus, dir);

  const auto start = Clock::now();
  ingest::IngestOptions io;
  auto loaded = ingest::load_bundle(ingest::BundlePaths::in_directory(dir), io);
  o.require(loaded.thesaurus.has_value(), "bundle did not load: " + loaded.diagnostics.to_text().substr(0, 200));
  if (!loaded.thesaurus) return o;
  const auto graph = skos::to_skos(*loaded.thesaurus, {});
  const auto nt = serial::to_ntriples(graph);
  {
    std::ofstream out(dir / "out.nt", std::ios::binary);
    out << nt;
  }
  const double convert_s = seconds_since(start);
  o.require(convert_s < 10.0, "conversion " + fmt(convert_s) + " s >= 10 s");

  // Target: a third verbatim (case-shifted) descriptor labels, a third one
  // edit away, a third unrelated phrases.
  link::TargetVocabulary target{"scale", Iri("http://target.example/"), {}};
  std::vector<std::string> pivot_labels;
  for (const auto& [id, term] : loaded.thesaurus->terms()) {
    if (term.kind == TermKind::Descriptor) pivot_labels.push_back(*term.label(loaded.thesaurus->pivot()));
  }
  std::uniform_int_distribution<std::size_t> pick(0, pivot_labels.size() - 1);
  for (std::size_t i = 0; i < 8000; ++i) {
    std::string label;
    switch (i % 3) {
      case 0: label = text::fold(pivot_labels[pick(rng)]); break;
      case 1: label = pivot_labels[pick(rng)] + "e"; break;
      default: label = testkit::random_phrase(rng); break;
    }
    target.entries.push_back({Iri("http://target.example/e" + std::to_string(i)), LanguageTag("de"), label, true});
  }
  link::DiscoveryOptions lo;
  lo.workers = std::max(1u, std::thread::hardware_concurrency());
  const auto link_start = Clock::now();
  const auto links = link::discover_links(*loaded.thesaurus, {}, target, lo);
  const double link_s = seconds_since(link_start);
  o.require(link_s < 60.0, "linking " + fmt(link_s) + " s >= 60 s");
  o.require(!links.empty(), "no links found");
  fs::remove_all(dir);
  o.note(std::to_string(terms) + " terms, " + std::to_string(relations) + " relations -> " +
         std::to_string(graph.size()) + " triples in " + fmt(convert_s) + " s; 8000x8000 link: " +
         std::to_string(links.size()) + " links in " + fmt(link_s) + " s with " + std::to_string(lo.workers) +
         " worker(s)");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"fixture fidelity", fixture_fidelity},
      {"compound pattern", compound_pattern},
      {"schema completeness", schema_completeness},
      {"serialization round trip", serialization_round_trip},
      {"levenshtein oracle", levenshtein_oracle},
      {"linker threshold behavior", linker_threshold},
      {"mapping validation", mapping_validation},
      {"expansion", expansion},
      {"co-word oracle", coword_oracle},
      {"scale smoke test", scale_smoke},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, check] = criteria[i];
    const auto start = Clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << name << " (" << fmt(seconds_since(start))
              << " s): " << o.detail << std::endl;
  }
#if SKOSKIT_WITH_CLI
  fs::remove_all(scratch());
#endif
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
