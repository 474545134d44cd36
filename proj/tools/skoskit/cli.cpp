#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "skoskit/ingest.hpp"
#include "skoskit/linker.hpp"
#include "skoskit/retrieval.hpp"
#include "skoskit/serializer.hpp"
#include "skoskit/skos_graph.hpp"

namespace skoskit::cli {

namespace fs = std::filesystem;

namespace {

// Unwinds a subcommand with an exit code; the reason is already recorded.
struct Exit {
  int code;
};

struct BundleArgs {
  std::string in;
  std::string langs = "de,en,fr";
  std::string pivot = "de";
  std::string base_uri;
  bool json = false;
  bool allow_unclassified = false;
};

class Session {
 public:
  Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  std::ostream& out() { return out_; }
  Diagnostics& diag() { return diag_; }

  [[noreturn]] void fail(int code, const std::string& file, const std::string& diag_code, const std::string& msg) {
    diag_.error(file, 0, diag_code, msg);
    throw Exit{code};
  }

  void flush(bool json) {
    diag_.sort();
    if (json) {
      err_ << diag_.to_json();
    } else {
      err_ << diag_.to_text();
    }
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  Diagnostics diag_;
};

std::set<LanguageTag> parse_languages(const std::string& list) {
  std::set<LanguageTag> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!LanguageTag::is_valid(item)) throw CLI::ValidationError("--langs", "invalid language tag '" + item + "'");
    out.emplace(item);
  }
  if (out.empty()) throw CLI::ValidationError("--langs", "at least one language is required");
  return out;
}

skos::UriPolicy make_policy(const std::string& flag_value) {
  std::string base = flag_value;
  if (base.empty()) {
    const char* env = std::getenv("THESOZ_BASE_URI");
    base = env && *env ? env : std::string(skos::kDefaultBase);
  }
  if (!rdf::Iri::is_valid(base) || base.back() != '/') {
    throw CLI::ValidationError("--base-uri", "'" + base + "' is not an absolute IRI ending in '/'");
  }
  return skos::UriPolicy(rdf::Iri(base));
}

void require_file(Session& s, const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) s.fail(kNoInput, path.string(), "MISSING_FILE", "no such file");
}

struct Loaded {
  Thesaurus thesaurus;
  skos::UriPolicy policy;
};

Loaded load_bundle(Session& s, const BundleArgs& a) {
  ingest::IngestOptions options;
  options.languages = parse_languages(a.langs);
  if (!LanguageTag::is_valid(a.pivot)) throw CLI::ValidationError("--pivot", "invalid language tag '" + a.pivot + "'");
  options.pivot = LanguageTag(a.pivot);
  if (!options.languages.contains(options.pivot)) {
    throw CLI::ValidationError("--pivot", "pivot '" + a.pivot + "' is not listed in --langs");
  }
  options.assembly.require_classification = !a.allow_unclassified;
  auto policy = make_policy(a.base_uri);

  std::error_code ec;
  if (!fs::is_directory(a.in, ec)) s.fail(kNoInput, a.in, "MISSING_FILE", "input directory does not exist");
  const auto paths = ingest::BundlePaths::in_directory(a.in);
  for (const auto& p : {paths.terms, paths.labels, paths.relations, paths.classification, paths.assignments}) {
    require_file(s, p);
  }

  auto result = ingest::load_bundle(paths, options);
  s.diag().append(result.diagnostics);
  if (!result.thesaurus) throw Exit{kValidation};
  const auto breaches = invariant_breaches(*result.thesaurus);
  if (!breaches.empty()) {
    for (const auto& b : breaches) s.diag().error("", 0, "INVARIANT_BREACH", b);
    throw Exit{kInternal};
  }
  return {std::move(*result.thesaurus), std::move(policy)};
}

void write_file(Session& s, const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (f) f << content;
  if (!f) s.fail(kCantCreate, path, "CANT_CREATE", "cannot write output file");
}

serial::Format parse_format(const std::string& name) {
  return name == "ttl" ? serial::Format::Turtle : serial::Format::NTriplesCanonical;
}

std::vector<link::MappingLink> load_links(Session& s, const std::string& path, const Thesaurus& thesaurus,
                                          const skos::UriPolicy& policy) {
  require_file(s, path);
  const auto ext = fs::path(path).extension().string();
  if (ext == ".nt" || ext == ".ttl") {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      const auto graph = ext == ".nt" ? serial::parse_ntriples(buf.str()) : serial::parse_turtle(buf.str());
      return link::links_from_graph(graph);
    } catch (const serial::ParseError& e) {
      s.diag().error(fs::path(path).filename().string(), e.line(), "PARSE_ERROR", e.what());
      throw Exit{kValidation};
    }
  }
  auto load = link::read_imported_mappings(path, thesaurus, policy);
  s.diag().append(load.diagnostics);
  if (!load.diagnostics.ok()) throw Exit{kValidation};
  return std::move(load.links);
}

nlohmann::ordered_json summary_json(const std::vector<skos::LinksetSummary>& summary) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& l : summary) {
    arr.push_back({{"target_dataset", l.target_dataset.str()}, {"predicate", l.predicate.str()}, {"count", l.count}});
  }
  return arr;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thesaurus to SKOS/SKOS-XL conversion, linking and retrieval", "skoskit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "skoskit 0.1.0");

  BundleArgs bundle;
  auto bundle_options = [&](CLI::App* sub) {
    sub->add_option("--in", bundle.in, "Directory holding the five TSV files")->required();
    sub->add_option("--langs", bundle.langs, "Comma-separated declared languages")->capture_default_str();
    sub->add_option("--pivot", bundle.pivot, "Pivot language")->capture_default_str();
    sub->add_option("--base-uri", bundle.base_uri, "Base IRI (default: $THESOZ_BASE_URI or built-in)");
    sub->add_flag("--allow-unclassified", bundle.allow_unclassified,
                  "Accept descriptors without a classification notation");
    sub->add_flag("--json", bundle.json, "Machine-readable output and diagnostics");
  };

  // convert
  auto* convert = app.add_subcommand("convert", "Convert a TSV bundle into SKOS/SKOS-XL RDF");
  bundle_options(convert);
  std::string out_path, format = "nt";
  std::optional<std::string> modified;
  bool emit_schema = false, emit_void = false, no_altlabels = false;
  convert->add_option("--out", out_path, "Output file")->required();
  convert->add_option("--format", format, "nt or ttl")->check(CLI::IsMember({"nt", "ttl"}))->capture_default_str();
  convert->add_flag("--emit-schema", emit_schema, "Include the extension vocabulary declarations");
  convert->add_flag("--emit-void", emit_void, "Include a VoiD dataset description");
  convert->add_option("--modified", modified, "dct:modified date (YYYY-MM-DD)");
  convert->add_flag("--no-altlabels", no_altlabels, "Do not emit altLabels for plain non-descriptors");

  // validate, stats
  auto* validate = app.add_subcommand("validate", "Ingest and validate a TSV bundle");
  bundle_options(validate);
  auto* stats_cmd = app.add_subcommand("stats", "Print counts of a TSV bundle");
  bundle_options(stats_cmd);

  // link
  auto* link_cmd = app.add_subcommand("link", "Discover mappings against a target vocabulary");
  bundle_options(link_cmd);
  std::string target_path, target_name = "target", lang;
  std::optional<std::string> target_dataset, void_path;
  double threshold = 0.21;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  bool no_prune = false;
  link_cmd->add_option("--target", target_path, "Target vocabulary TSV")->required();
  link_cmd->add_option("--out", out_path, "Mapping triples output file")->required();
  link_cmd->add_option("--format", format, "nt or ttl")->check(CLI::IsMember({"nt", "ttl"}))->capture_default_str();
  link_cmd->add_option("--threshold", threshold, "Normalized Levenshtein threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  link_cmd->add_option("--lang", lang, "Matching language (default: pivot)");
  link_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  link_cmd->add_flag("--no-prune", no_prune, "Compare every pair without candidate filtering");
  link_cmd->add_option("--target-name", target_name, "Name of the target vocabulary")->capture_default_str();
  link_cmd->add_option("--target-dataset", target_dataset, "Dataset IRI of the target (default: from entries)");
  link_cmd->add_option("--void", void_path, "Write a VoiD description with linkset counts");

  // check-mappings
  auto* check = app.add_subcommand("check-mappings", "Validate imported or emitted mappings");
  bundle_options(check);
  std::string links_path;
  check->add_option("--links", links_path, "Mapping file (.tsv import, .nt or .ttl)")->required();

  // expand
  auto* expand_cmd = app.add_subcommand("expand", "Expand a query term");
  bundle_options(expand_cmd);
  std::string query;
  bool narrower = false, related = false, no_exact = false;
  unsigned depth = 1;
  expand_cmd->add_option("--links", links_path, "Mapping file (.tsv import, .nt or .ttl)");
  expand_cmd->add_option("--query", query, "Query label")->required();
  expand_cmd->add_option("--lang", lang, "Query language (default: any)");
  expand_cmd->add_flag("--narrower", narrower, "Follow narrower concepts");
  expand_cmd->add_flag("--related", related, "Follow related concepts");
  expand_cmd->add_flag("--no-exact", no_exact, "Do not follow exactMatch links");
  expand_cmd->add_option("--depth", depth, "Narrower levels")->check(CLI::Range(1u, 64u))->capture_default_str();

  // recommend
  auto* recommend_cmd = app.add_subcommand("recommend", "Recommend co-occurring descriptors");
  bundle_options(recommend_cmd);
  std::string corpus_path, seed;
  std::size_t k = 10;
  recommend_cmd->add_option("--corpus", corpus_path, "Corpus TSV (doc_id, descriptor_id)")->required();
  recommend_cmd->add_option("--seed", seed, "Seed descriptor id")->required();
  recommend_cmd->add_option("-k", k, "Number of recommendations")->check(CLI::PositiveNumber)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Session s(out, err);
  int code = kOk;
  try {
    if (convert->parsed()) {
      auto [thesaurus, policy] = load_bundle(s, bundle);
      skos::ConversionOptions options;
      options.emit_altlabels = !no_altlabels;
      options.metadata.modified = modified;
      rdf::Graph graph = skos::to_skos(thesaurus, policy, options);
      if (emit_schema) graph.merge(skos::emit_extension_schema(policy));
      if (emit_void) graph.merge(skos::emit_void(graph, {}, policy));
      write_file(s, out_path, serial::emit(graph, {parse_format(format), std::nullopt}));
    } else if (validate->parsed()) {
      load_bundle(s, bundle);
    } else if (stats_cmd->parsed()) {
      auto [thesaurus, policy] = load_bundle(s, bundle);
      const auto report = stats(thesaurus);
      out << (bundle.json ? report.to_json() : report.to_text());
    } else if (link_cmd->parsed()) {
      auto [thesaurus, policy] = load_bundle(s, bundle);
      require_file(s, target_path);
      std::optional<rdf::Iri> dataset;
      if (target_dataset) {
        if (!rdf::Iri::is_valid(*target_dataset)) {
          throw CLI::ValidationError("--target-dataset", "'" + *target_dataset + "' is not an absolute IRI");
        }
        dataset = rdf::Iri(*target_dataset);
      }
      auto target = link::read_target_vocabulary(target_path, target_name, dataset);
      s.diag().append(target.diagnostics);
      if (!target.diagnostics.ok()) throw Exit{kValidation};

      link::DiscoveryOptions options;
      options.threshold = threshold;
      options.workers = workers;
      options.prune = !no_prune;
      if (!lang.empty()) {
        if (!LanguageTag::is_valid(lang) || !thesaurus.languages().contains(LanguageTag(lang))) {
          throw CLI::ValidationError("--lang", "language '" + lang + "' is not declared");
        }
        options.language = LanguageTag(lang);
      }
      const auto links = link::discover_links(thesaurus, policy, target.vocabulary, options);
      const auto report = link::validate_mappings(links, thesaurus, policy);
      const auto emitted = link::emit_mapping_triples(links);
      if (report.has_errors()) {
        out << (bundle.json ? report.to_json() : report.to_text());
        throw Exit{kValidation};
      }
      write_file(s, out_path, serial::emit(emitted.graph, {parse_format(format), std::nullopt}));
      if (void_path) {
        const auto data = skos::to_skos(thesaurus, policy);
        write_file(s, *void_path, serial::emit(skos::emit_void(data, emitted.summary, policy)));
      }
      if (bundle.json) {
        nlohmann::ordered_json doc = {{"links", links.size()}, {"linksets", summary_json(emitted.summary)}};
        out << doc.dump(2) << "\n";
      } else {
        for (const auto& l : emitted.summary) {
          out << l.target_dataset.str() << "\t" << l.predicate.str() << "\t" << l.count << "\n";
        }
      }
    } else if (check->parsed()) {
      auto [thesaurus, policy] = load_bundle(s, bundle);
      const auto links = load_links(s, links_path, thesaurus, policy);
      const auto report = link::validate_mappings(links, thesaurus, policy);
      out << (bundle.json ? report.to_json() : report.to_text());
      if (report.has_errors()) code = kValidation;
    } else if (expand_cmd->parsed()) {
      auto [thesaurus, policy] = load_bundle(s, bundle);
      std::vector<link::MappingLink> links;
      if (!links_path.empty()) links = load_links(s, links_path, thesaurus, policy);
      std::optional<LanguageTag> language;
      if (!lang.empty()) {
        if (!LanguageTag::is_valid(lang)) throw CLI::ValidationError("--lang", "invalid language tag '" + lang + "'");
        language = LanguageTag(lang);
      }
      retrieval::ExpansionOptions options;
      options.follow_exact = !no_exact;
      options.follow_narrower = narrower;
      options.follow_related = related;
      options.depth = depth;
      const retrieval::LabelIndex index(thesaurus, policy);
      const auto result = retrieval::expand(index, links, query, language, options);
      out << (bundle.json ? result.to_json() : result.to_text());
    } else if (recommend_cmd->parsed()) {
      auto [thesaurus, policy] = load_bundle(s, bundle);
      require_file(s, corpus_path);
      const Term* term = TermId::is_valid(seed) ? thesaurus.find(TermId(seed)) : nullptr;
      if (!term || term->kind != TermKind::Descriptor) {
        s.fail(kValidation, "", "UNKNOWN_DESCRIPTOR", "seed '" + seed + "' is not a descriptor");
      }
      auto corpus = retrieval::read_corpus(corpus_path, thesaurus, policy);
      s.diag().append(corpus.diagnostics);
      if (!corpus.diagnostics.ok()) throw Exit{kValidation};
      const retrieval::LabelIndex index(thesaurus, policy);
      const auto matrix = retrieval::build_coword(corpus.documents, index.descriptors());
      const auto seed_iri = skos::concept_iri(policy, term->id);
      const auto ranked = retrieval::recommend(matrix, seed_iri, k);
      if (bundle.json) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : ranked) arr.push_back({{"iri", r.iri.str()}, {"count", r.count}});
        nlohmann::ordered_json doc = {
            {"seed", seed_iri.str()}, {"documents", matrix.documents()}, {"recommendations", arr}};
        out << doc.dump(2) << "\n";
      } else {
        for (const auto& r : ranked) out << r.iri.str() << "\t" << r.count << "\n";
      }
    }
  } catch (const Exit& e) {
    code = e.code;
  } catch (const CLI::ValidationError& e) {
    err << "skoskit: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    s.diag().error("", 0, "INTERNAL", e.what());
    code = kInternal;
  }
  s.flush(bundle.json);
  return code;
}

}  // namespace skoskit::cli
