#include "skoskit/linker.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <nlohmann/json.hpp>

#include "skoskit/text.hpp"
#include "tsv.hpp"

namespace skoskit::link {

namespace {

constexpr std::array<std::pair<MatchType, std::string_view>, 5> kMatchNames = {{
    {MatchType::Exact, "exactMatch"},
    {MatchType::Close, "closeMatch"},
    {MatchType::Broad, "broadMatch"},
    {MatchType::Narrow, "narrowMatch"},
    {MatchType::Related, "relatedMatch"},
}};

}  // namespace

const char* to_string(MatchType type) {
  for (const auto& [t, name] : kMatchNames) {
    if (t == type) return name.data();
  }
  return "?";
}

std::optional<MatchType> parse_match_type(std::string_view s) {
  if (s.starts_with(rdf::ns::skos)) {
    s.remove_prefix(rdf::ns::skos.size());
  } else if (s.starts_with("skos:")) {
    s.remove_prefix(5);
  }
  for (const auto& [t, name] : kMatchNames) {
    if (name == s) return t;
  }
  return std::nullopt;
}

rdf::Iri predicate(MatchType type) { return rdf::term(rdf::ns::skos, to_string(type)); }

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::ExactString: return "exact-string";
    case Provenance::Levenshtein: return "levenshtein";
    case Provenance::Imported: return "imported";
  }
  return "?";
}

rdf::Iri dataset_of(const rdf::Iri& iri) {
  const std::string& s = iri.str();
  const auto colon = s.find(':');
  if (s.compare(colon, 3, "://") != 0) return iri;
  const auto slash = s.find('/', colon + 3);
  if (slash == std::string::npos) return rdf::Iri(s + "/");
  return rdf::Iri(s.substr(0, slash + 1));
}

// ---------------------------------------------------------------------------
// String distance

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({up + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  return levenshtein(text::to_u32(a), text::to_u32(b));
}

std::size_t bounded_levenshtein(std::u32string_view a, std::u32string_view b, std::size_t bound) {
  while (!a.empty() && !b.empty() && a.front() == b.front()) {
    a.remove_prefix(1);
    b.remove_prefix(1);
  }
  while (!a.empty() && !b.empty() && a.back() == b.back()) {
    a.remove_suffix(1);
    b.remove_suffix(1);
  }
  if (a.size() > b.size()) std::swap(a, b);
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  if (n - m > bound) return bound + 1;
  if (m == 0) return n;

  const std::size_t inf = bound + 1;
  std::vector<std::size_t> prev(n + 1, inf), cur(n + 1, inf);
  for (std::size_t j = 0; j <= std::min(n, bound); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= m; ++i) {
    const std::size_t lo = i > bound ? i - bound : 1;
    const std::size_t hi = std::min(n, i + bound);
    cur[lo - 1] = lo == 1 && i <= bound ? i : inf;
    std::size_t row_min = cur[lo - 1];
    for (std::size_t j = lo; j <= hi; ++j) {
      std::size_t v = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      v = std::min(v, prev[j] + 1);
      v = std::min(v, cur[j - 1] + 1);
      cur[j] = std::min(v, inf);
      row_min = std::min(row_min, cur[j]);
    }
    if (hi < n) cur[hi + 1] = inf;
    if (row_min > bound) return inf;
    std::swap(prev, cur);
  }
  return std::min(prev[n], inf);
}

double normalized_distance(std::u32string_view a, std::u32string_view b) {
  const std::size_t max = std::max(a.size(), b.size());
  if (max == 0) return 0.0;
  return static_cast<double>(levenshtein(a, b)) / static_cast<double>(max);
}

double normalized_distance(std::string_view a, std::string_view b) {
  return normalized_distance(text::to_u32(a), text::to_u32(b));
}

std::size_t distance_budget(double threshold, std::size_t max_length) {
  if (threshold <= 0.0) return 0;
  if (threshold >= 1.0) return max_length;
  return static_cast<std::size_t>(std::floor(threshold * static_cast<double>(max_length) + 1e-9));
}

// ---------------------------------------------------------------------------
// Discovery

namespace {

using Histogram = std::array<std::uint16_t, 64>;

Histogram histogram(std::u32string_view s) {
  Histogram h{};
  for (char32_t c : s) ++h[c & 63];
  return h;
}

// Each edit moves at most two units of histogram mass, so half the L1
// difference (rounded up) bounds the edit distance from below.
std::size_t histogram_bound(const Histogram& a, const Histogram& b) {
  std::size_t l1 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) l1 += a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
  return (l1 + 1) / 2;
}

struct Candidate {
  const rdf::Iri* iri;
  std::u32string key;
  Histogram hist;
};

struct Source {
  TermId id;
  std::u32string key;
};

struct Best {
  const Candidate* target = nullptr;
  std::size_t distance = 0;
  std::size_t max_length = 1;

  // Exact comparison of d/max fractions, ties to the smaller IRI.
  bool improved_by(std::size_t d, std::size_t max, const Candidate& c) const {
    if (!target) return true;
    const auto lhs = d * max_length;
    const auto rhs = distance * max;
    if (lhs != rhs) return lhs < rhs;
    return *c.iri < *target->iri;
  }
};

class Matcher {
 public:
  Matcher(std::vector<Candidate> candidates, double threshold, bool prune)
      : candidates_(std::move(candidates)), threshold_(threshold), prune_(prune) {
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      const auto len = candidates_[i].key.size();
      if (by_length_.size() <= len) by_length_.resize(len + 1);
      by_length_[len].push_back(i);
    }
  }

  Best match(std::u32string_view key) const { return prune_ ? match_pruned(key) : match_all(key); }

 private:
  Best match_all(std::u32string_view key) const {
    Best best;
    for (const auto& c : candidates_) {
      const auto max = std::max(key.size(), c.key.size());
      const auto d = levenshtein(key, c.key);
      if (d > distance_budget(threshold_, max)) continue;
      if (best.improved_by(d, max, c)) best = {&c, d, max};
    }
    return best;
  }

  Best match_pruned(std::u32string_view key) const {
    Best best;
    const std::size_t m = key.size();
    const Histogram h = histogram(key);
    const std::size_t longest = by_length_.empty() ? 0 : by_length_.size() - 1;

    std::vector<std::size_t> lengths;
    for (std::size_t n = m; n <= longest; ++n) {
      if (n - m > distance_budget(threshold_, n)) break;
      lengths.push_back(n);
    }
    for (std::size_t n = m; n-- > 0;) {
      if (m - n > distance_budget(threshold_, m)) break;
      lengths.push_back(n);
    }
    std::stable_sort(lengths.begin(), lengths.end(), [m](std::size_t x, std::size_t y) {
      return (x > m ? x - m : m - x) < (y > m ? y - m : m - y);
    });

    for (std::size_t n : lengths) {
      if (n >= by_length_.size()) continue;
      const std::size_t max = std::max(m, n);
      for (std::size_t idx : by_length_[n]) {
        const Candidate& c = candidates_[idx];
        std::size_t bound = distance_budget(threshold_, max);
        if (best.target) bound = std::min(bound, best.distance * max / best.max_length);
        if ((m > n ? m - n : n - m) > bound) continue;
        if (histogram_bound(h, c.hist) > bound) continue;
        const std::size_t d = bounded_levenshtein(key, c.key, bound);
        if (d > bound) continue;
        if (best.improved_by(d, max, c)) best = {&c, d, max};
      }
    }
    return best;
  }

  std::vector<Candidate> candidates_;
  std::vector<std::vector<std::size_t>> by_length_;
  double threshold_;
  bool prune_;
};

}  // namespace

std::vector<MappingLink> discover_links(const Thesaurus& thesaurus, const skos::UriPolicy& policy,
                                        const TargetVocabulary& target, const DiscoveryOptions& options) {
  if (!(options.threshold >= 0.0 && options.threshold <= 1.0)) {
    throw std::invalid_argument("threshold must lie in [0, 1]");
  }
  const LanguageTag lang = options.language.value_or(thesaurus.pivot());
  if (!thesaurus.languages().contains(lang)) {
    throw std::invalid_argument("language '" + lang.str() + "' is not declared by the thesaurus");
  }

  std::vector<Candidate> candidates;
  for (const auto& e : target.entries) {
    if (!e.preferred || e.language != lang) continue;
    auto key = text::to_u32(text::fold(e.label));
    auto hist = histogram(key);
    candidates.push_back({&e.iri, std::move(key), hist});
  }
  std::vector<Source> sources;
  for (const auto& [id, term] : thesaurus.terms()) {
    if (term.kind != TermKind::Descriptor) continue;
    if (const auto* label = term.label(lang)) sources.push_back({id, text::to_u32(text::fold(*label))});
  }

  const Matcher matcher(std::move(candidates), options.threshold, options.prune);
  std::vector<Best> results(sources.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < sources.size(); i = next++) results[i] = matcher.match(sources[i].key);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(sources.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::vector<MappingLink> links;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const Best& b = results[i];
    if (!b.target) continue;
    const bool exact = b.distance == 0;
    links.push_back({skos::concept_iri(policy, sources[i].id), *b.target->iri,
                     exact ? MatchType::Exact : MatchType::Close,
                     static_cast<double>(b.distance) / static_cast<double>(b.max_length),
                     exact ? Provenance::ExactString : Provenance::Levenshtein, target.dataset, {}});
  }
  std::sort(links.begin(), links.end(), [](const MappingLink& a, const MappingLink& b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });
  return links;
}

// ---------------------------------------------------------------------------
// Validation

bool MappingValidationReport::has_errors() const {
  return std::any_of(findings.begin(), findings.end(), [](const Finding& f) { return f.severity == Severity::Error; });
}

std::size_t MappingValidationReport::count(std::string_view code) const {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [&](const Finding& f) { return f.code == code; }));
}

namespace {

const char* severity_name(Severity s) { return s == Severity::Error ? "error" : "warning"; }

}  // namespace

std::string MappingValidationReport::to_text() const {
  std::string out;
  for (const auto& f : findings) {
    out += std::string(severity_name(f.severity)) + " " + f.code + " <" + f.source.str() + ">";
    for (std::size_t i = 0; i < f.targets.size(); ++i) out += (i ? ", <" : " -> <") + f.targets[i].str() + ">";
    out += ": " + f.message + "\n";
  }
  return out;
}

std::string MappingValidationReport::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& f : findings) {
    nlohmann::ordered_json targets = nlohmann::ordered_json::array();
    for (const auto& t : f.targets) targets.push_back(t.str());
    arr.push_back({{"severity", severity_name(f.severity)},
                   {"code", f.code},
                   {"source", f.source.str()},
                   {"targets", targets},
                   {"message", f.message}});
  }
  nlohmann::ordered_json doc = {{"findings", arr}};
  return doc.dump(2) + "\n";
}

MappingValidationReport validate_mappings(const std::vector<MappingLink>& links, const Thesaurus& thesaurus,
                                          const skos::UriPolicy& policy) {
  enum class Role { Concept, DescriptorLabel, NonPreferred };
  std::map<rdf::Iri, std::pair<Role, const Term*>> roles;
  for (const auto& [id, term] : thesaurus.terms()) {
    const bool pref = term.kind == TermKind::Descriptor;
    roles.emplace(skos::concept_iri(policy, id), std::pair{pref ? Role::Concept : Role::NonPreferred, &term});
    for (const auto& [lang, label] : term.labels) {
      roles.emplace(skos::label_iri(policy, id, lang), std::pair{pref ? Role::DescriptorLabel : Role::NonPreferred, &term});
    }
  }

  MappingValidationReport report;
  std::set<rdf::Iri> flagged;
  for (const auto& l : links) {
    if (!flagged.insert(l.source).second) continue;
    const auto it = roles.find(l.source);
    if (it == roles.end()) {
      report.findings.push_back({Severity::Error, "UNKNOWN_SOURCE", l.source, {},
                                 "source is neither a concept nor a label of the thesaurus"});
      continue;
    }
    const auto [role, term] = it->second;
    if (role == Role::NonPreferred) {
      report.findings.push_back({Severity::Error, "NONPREF_SOURCE", l.source, {},
                                 std::string("source belongs to non-preferred term '") + term->id.str() + "' (" +
                                     to_code(term->kind) + "); SKOS mappings must start at a concept"});
    } else if (role == Role::DescriptorLabel) {
      report.findings.push_back({Severity::Error, "LABEL_SOURCE", l.source, {},
                                 "source is a label of descriptor '" + term->id.str() + "', not its concept"});
    }
  }

  std::map<std::string, std::pair<rdf::Iri, std::set<rdf::Iri>>> groups;
  for (const auto& l : links) {
    if (l.conjunct_group.empty()) continue;
    groups.try_emplace(l.conjunct_group, l.source, std::set<rdf::Iri>{}).first->second.second.insert(l.target);
  }
  for (const auto& [key, group] : groups) {
    if (group.second.size() < 2) continue;
    report.findings.push_back({Severity::Warning, "SINGLE_TO_MULTIPLE", group.first,
                               {group.second.begin(), group.second.end()},
                               "record maps one source to the combination of " +
                                   std::to_string(group.second.size()) +
                                   " targets; SKOS mapping properties cannot express this"});
  }

  std::map<std::pair<rdf::Iri, rdf::Iri>, std::set<MatchType>> types;
  for (const auto& l : links) types[{l.source, l.target}].insert(l.match_type);
  for (const auto& [pair, kinds] : types) {
    if (kinds.size() < 2) continue;
    std::string names;
    for (auto k : kinds) names += (names.empty() ? "" : ", ") + std::string(to_string(k));
    report.findings.push_back(
        {Severity::Error, "DUPLICATE_LINK", pair.first, {pair.second}, "conflicting match types: " + names});
  }

  std::stable_sort(report.findings.begin(), report.findings.end(), [](const Finding& a, const Finding& b) {
    return std::tie(a.source, a.code, a.targets) < std::tie(b.source, b.code, b.targets);
  });
  return report;
}

// ---------------------------------------------------------------------------
// Output

MappingOutput emit_mapping_triples(const std::vector<MappingLink>& links) {
  MappingOutput out;
  std::map<std::pair<rdf::Iri, rdf::Iri>, std::uint64_t> counts;
  for (const auto& l : links) {
    if (!l.conjunct_group.empty()) continue;
    const auto p = predicate(l.match_type);
    if (out.graph.insert(rdf::Triple{l.source, p, l.target})) ++counts[{l.target_dataset, p}];
  }
  for (const auto& [key, n] : counts) out.summary.push_back({key.first, key.second, n});
  return out;
}

std::vector<MappingLink> links_from_graph(const rdf::Graph& graph) {
  std::vector<MappingLink> links;
  for (const auto& t : graph.triples()) {
    const auto* target = std::get_if<rdf::Iri>(&t.object);
    if (!target) continue;
    const auto type = parse_match_type(t.predicate.str());
    if (!type || !t.predicate.str().starts_with(rdf::ns::skos)) continue;
    links.push_back({t.subject, *target, *type, 0.0, Provenance::Imported, dataset_of(*target), {}});
  }
  return links;
}

// ---------------------------------------------------------------------------
// Files

TargetLoad read_target_vocabulary(const std::filesystem::path& path, std::string name,
                                  std::optional<rdf::Iri> dataset) {
  TargetLoad out{{name, rdf::Iri("urn:x-target:" + text::percent_encode_segment(name.empty() ? "target" : name)), {}},
                 {}};
  const std::string file = path.filename().string();
  detail::read_tsv(path, file, {"iri", "lang", "label", "preferred"}, out.diagnostics,
                   [&](const detail::TsvRow& row, std::size_t line) {
                     bool ok = true;
                     auto bad = [&](const std::string& msg) {
                       out.diagnostics.error(file, line, "BAD_VALUE", msg);
                       ok = false;
                     };
                     if (!rdf::Iri::is_valid(row[0])) bad("invalid IRI '" + row[0] + "'");
                     if (!LanguageTag::is_valid(row[1])) bad("invalid language tag '" + row[1] + "'");
                     if (row[2].empty()) bad("empty label");
                     if (row[3] != "0" && row[3] != "1") bad("preferred must be 0 or 1, got '" + row[3] + "'");
                     if (!ok) return;
                     out.vocabulary.entries.push_back({rdf::Iri(row[0]), LanguageTag(row[1]), row[2], row[3] == "1"});
                   });
  if (dataset) {
    out.vocabulary.dataset = *dataset;
  } else if (!out.vocabulary.entries.empty()) {
    out.vocabulary.dataset = dataset_of(out.vocabulary.entries.front().iri);
  }
  out.diagnostics.sort();
  return out;
}

ImportLoad read_imported_mappings(const std::filesystem::path& path, const Thesaurus& thesaurus,
                                  const skos::UriPolicy& policy) {
  ImportLoad out;
  const std::string file = path.filename().string();
  detail::read_tsv(
      path, file, {"source_id", "target_iri", "match_type"}, out.diagnostics,
      [&](const detail::TsvRow& row, std::size_t line) {
        bool ok = true;
        auto bad = [&](const std::string& msg) {
          out.diagnostics.error(file, line, "BAD_VALUE", msg);
          ok = false;
        };
        if (!TermId::is_valid(row.front())) bad("invalid source_id '" + row.front() + "'");
        const auto type = parse_match_type(row.back());
        if (!type) bad("unknown match_type '" + row.back() + "'");
        std::vector<rdf::Iri> targets;
        for (std::size_t i = 1; i + 1 < row.size(); ++i) {
          if (rdf::Iri::is_valid(row[i])) {
            targets.emplace_back(row[i]);
          } else {
            bad("invalid target IRI '" + row[i] + "'");
          }
        }
        if (!ok) return;

        const TermId id(row.front());
        std::optional<rdf::Iri> source;
        if (const Term* term = thesaurus.find(id); term && is_non_preferred(term->kind)) {
          const auto lang = term->labels.contains(thesaurus.pivot()) || term->labels.empty()
                                ? thesaurus.pivot()
                                : term->labels.begin()->first;
          source = skos::label_iri(policy, id, lang);
        } else {
          source = skos::concept_iri(policy, id);
        }
        const std::string group = targets.size() > 1 ? file + ":" + std::to_string(line) : std::string{};
        for (auto& t : targets) {
          auto ds = dataset_of(t);
          out.links.push_back({*source, std::move(t), *type, 0.0, Provenance::Imported, std::move(ds), group});
        }
      },
      /*variable_width=*/true);
  out.diagnostics.sort();
  return out;
}

}  // namespace skoskit::link
