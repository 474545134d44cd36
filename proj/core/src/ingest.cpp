#include "skoskit/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <string_view>
#include <tuple>

#include "skoskit/text.hpp"
#include "tsv.hpp"

namespace skoskit::ingest {

namespace fs = std::filesystem;

BundlePaths BundlePaths::in_directory(const fs::path& dir) {
  return {dir / kTermsFile, dir / kLabelsFile, dir / kRelationsFile, dir / kClassificationFile,
          dir / kAssignmentsFile};
}

std::size_t RecordSet::count(RelationCode kind) const {
  return static_cast<std::size_t>(
      std::count_if(relations.begin(), relations.end(), [&](const RelationRecord& r) { return r.kind == kind; }));
}

std::size_t RecordSet::compound_groups() const {
  std::set<std::string> keys;
  for (const auto& r : relations) {
    if (r.kind == RelationCode::USE_COMB) keys.insert(r.group_key);
  }
  return keys.size();
}

namespace {

using Row = detail::TsvRow;
using RowHandler = std::function<void(const Row&, const SourceLocation&)>;

void read_table(const fs::path& path, const std::string& name, const std::vector<std::string>& header,
                Diagnostics& diag, const RowHandler& handler) {
  detail::read_tsv(path, name, header, diag,
                   [&](const Row& row, std::size_t line) { handler(row, SourceLocation{name, line}); });
}

std::optional<TermId> term_field(const std::string& value, const char* column, const SourceLocation& at,
                                 Diagnostics& diag) {
  if (!TermId::is_valid(value)) {
    diag.error(at.file, at.line, "BAD_VALUE", std::string("invalid ") + column + " '" + value + "'");
    return std::nullopt;
  }
  return TermId(value);
}

std::optional<LanguageTag> lang_field(const std::string& value, const IngestOptions& options,
                                      const SourceLocation& at, Diagnostics& diag) {
  if (LanguageTag::is_valid(value)) {
    LanguageTag tag(value);
    if (options.languages.contains(tag)) return tag;
  }
  diag.error(at.file, at.line, "UNKNOWN_LANG", "language '" + value + "' is not declared");
  return std::nullopt;
}

std::optional<RelationCode> parse_relation_code(std::string_view s) {
  if (s == "BT") return RelationCode::BT;
  if (s == "NT") return RelationCode::NT;
  if (s == "RT") return RelationCode::RT;
  if (s == "USE") return RelationCode::USE;
  if (s == "USE_COMB") return RelationCode::USE_COMB;
  return std::nullopt;
}

const char* to_code(RelationCode c) {
  switch (c) {
    case RelationCode::BT: return "BT";
    case RelationCode::NT: return "NT";
    case RelationCode::RT: return "RT";
    case RelationCode::USE: return "USE";
    case RelationCode::USE_COMB: return "USE_COMB";
  }
  return "?";
}

}  // namespace

ParseResult parse_bundle(const BundlePaths& paths, const IngestOptions& options) {
  ParseResult result;
  auto& rec = result.records;
  auto& diag = result.diagnostics;

  {
    std::set<std::string> seen;
    read_table(paths.terms, kTermsFile, {"id", "kind"}, diag, [&](const Row& row, const SourceLocation& at) {
      auto id = term_field(row[0], "id", at, diag);
      auto kind = parse_term_kind(row[1]);
      if (!kind) diag.error(at.file, at.line, "BAD_VALUE", "kind must be D, ND or AD, got '" + row[1] + "'");
      if (!id || !kind) return;
      if (!seen.insert(row[0]).second) {
        diag.error(at.file, at.line, "DUPLICATE_ID", "term '" + row[0] + "' already declared");
        return;
      }
      rec.terms.push_back({std::move(*id), *kind, at});
    });
  }
  {
    std::set<std::pair<std::string, std::string>> seen;
    read_table(paths.labels, kLabelsFile, {"term_id", "lang", "label"}, diag,
               [&](const Row& row, const SourceLocation& at) {
                 auto id = term_field(row[0], "term_id", at, diag);
                 auto lang = lang_field(row[1], options, at, diag);
                 if (row[2].empty()) diag.error(at.file, at.line, "BAD_VALUE", "empty label");
                 if (!id || !lang || row[2].empty()) return;
                 if (!seen.emplace(row[0], lang->str()).second) {
                   diag.error(at.file, at.line, "DUPLICATE_ID",
                              "term '" + row[0] + "' already has a '" + lang->str() + "' label");
                   return;
                 }
                 rec.labels.push_back({std::move(*id), std::move(*lang), row[2], at});
               });
  }
  {
    std::set<std::tuple<std::string, std::string, std::string, std::string>> seen;
    read_table(paths.relations, kRelationsFile, {"kind", "source_id", "target_id", "group_key"}, diag,
               [&](const Row& row, const SourceLocation& at) {
                 auto kind = parse_relation_code(row[0]);
                 if (!kind) diag.error(at.file, at.line, "BAD_VALUE", "unknown relation kind '" + row[0] + "'");
                 auto source = term_field(row[1], "source_id", at, diag);
                 auto target = term_field(row[2], "target_id", at, diag);
                 if (!kind || !source || !target) return;
                 const bool comb = *kind == RelationCode::USE_COMB;
                 if (comb == row[3].empty()) {
                   diag.error(at.file, at.line, "BAD_VALUE",
                              comb ? "USE_COMB requires a group_key" : "group_key is only allowed on USE_COMB");
                   return;
                 }
                 if (!seen.emplace(row[0], row[1], row[2], row[3]).second) {
                   diag.error(at.file, at.line, "DUPLICATE_ID", "relation row repeated");
                   return;
                 }
                 rec.relations.push_back({*kind, std::move(*source), std::move(*target), row[3], at});
               });
  }
  {
    std::set<std::pair<std::string, std::string>> seen;
    read_table(paths.classification, kClassificationFile, {"notation", "parent_notation", "lang", "label"}, diag,
               [&](const Row& row, const SourceLocation& at) {
                 if (row[0].empty()) diag.error(at.file, at.line, "BAD_VALUE", "empty notation");
                 auto lang = lang_field(row[2], options, at, diag);
                 if (row[3].empty()) diag.error(at.file, at.line, "BAD_VALUE", "empty label");
                 if (row[0].empty() || !lang || row[3].empty()) return;
                 if (!seen.emplace(row[0], lang->str()).second) {
                   diag.error(at.file, at.line, "DUPLICATE_ID",
                              "notation '" + row[0] + "' already has a '" + lang->str() + "' label");
                   return;
                 }
                 std::optional<std::string> parent;
                 if (!row[1].empty()) parent = row[1];
                 rec.classification.push_back({row[0], std::move(parent), std::move(*lang), row[3], at});
               });
  }
  {
    std::set<std::pair<std::string, std::string>> seen;
    read_table(paths.assignments, kAssignmentsFile, {"term_id", "notation"}, diag,
               [&](const Row& row, const SourceLocation& at) {
                 auto id = term_field(row[0], "term_id", at, diag);
                 if (row[1].empty()) diag.error(at.file, at.line, "BAD_VALUE", "empty notation");
                 if (!id || row[1].empty()) return;
                 if (!seen.emplace(row[0], row[1]).second) {
                   diag.error(at.file, at.line, "DUPLICATE_ID", "assignment repeated");
                   return;
                 }
                 rec.assignments.push_back({std::move(*id), row[1], at});
               });
  }
  diag.sort();
  return result;
}

AssembleResult assemble_thesaurus(const RecordSet& records, const IngestOptions& options) {
  AssembleResult result;
  auto& diag = result.diagnostics;

  ThesaurusParts parts;
  parts.languages = options.languages;
  parts.pivot = options.pivot;

  // Parallel location tables, one per part vector.
  std::vector<SourceLocation> term_at, semantic_at, equivalence_at, compound_at, classification_at, assignment_at;

  std::map<TermId, std::size_t> term_index;
  for (const auto& r : records.terms) {
    if (!term_index.emplace(r.id, parts.terms.size()).second) {
      diag.error(r.at.file, r.at.line, "DUPLICATE_ID", "term '" + r.id.str() + "' already declared");
      continue;
    }
    parts.terms.push_back({r.id, r.kind, {}, {}});
    term_at.push_back(r.at);
  }
  for (const auto& r : records.labels) {
    auto it = term_index.find(r.term);
    if (it == term_index.end()) {
      diag.error(r.at.file, r.at.line, "DANGLING_TERM", "label for unknown term '" + r.term.str() + "'");
      continue;
    }
    parts.terms[it->second].labels.emplace(r.lang, r.label);
  }

  std::map<std::string, std::size_t> group_index;
  for (const auto& r : records.relations) {
    switch (r.kind) {
      case RelationCode::BT:
      case RelationCode::NT:
      case RelationCode::RT: {
        const auto kind = r.kind == RelationCode::BT   ? SemanticKind::Broader
                          : r.kind == RelationCode::NT ? SemanticKind::Narrower
                                                       : SemanticKind::Related;
        parts.semantic.push_back({r.source, kind, r.target});
        semantic_at.push_back(r.at);
        break;
      }
      case RelationCode::USE:
        parts.equivalences.push_back({r.source, r.target});
        equivalence_at.push_back(r.at);
        break;
      case RelationCode::USE_COMB: {
        auto [it, fresh] = group_index.emplace(r.group_key, parts.compounds.size());
        if (fresh) {
          parts.compounds.push_back({r.group_key, r.source, {}});
          compound_at.push_back(r.at);
        } else if (parts.compounds[it->second].non_preferred != r.source) {
          diag.error(r.at.file, r.at.line, "GROUP_CONFLICT",
                     "group '" + r.group_key + "' already belongs to '" +
                         parts.compounds[it->second].non_preferred.str() + "'");
          break;
        }
        parts.compounds[it->second].components.push_back(r.target);
        break;
      }
    }
  }

  std::map<std::string, std::size_t> node_index;
  for (const auto& r : records.classification) {
    auto [it, fresh] = node_index.emplace(r.notation, parts.classification.size());
    if (fresh) {
      parts.classification.push_back({r.notation, {}, r.parent});
      classification_at.push_back(r.at);
    } else if (parts.classification[it->second].parent != r.parent) {
      diag.error(r.at.file, r.at.line, "PARENT_CONFLICT",
                 "notation '" + r.notation + "' declared with a different parent");
      continue;
    }
    parts.classification[it->second].labels.emplace(r.lang, r.label);
  }
  for (const auto& r : records.assignments) {
    parts.assignments.push_back({r.term, r.notation});
    assignment_at.push_back(r.at);
  }

  auto locate = [&](const PartRef& ref) -> SourceLocation {
    switch (ref.kind) {
      case PartKind::Term: return term_at[ref.index];
      case PartKind::Semantic: return semantic_at[ref.index];
      case PartKind::Equivalence: return equivalence_at[ref.index];
      case PartKind::Compound: return compound_at[ref.index];
      case PartKind::Classification: return classification_at[ref.index];
      case PartKind::Assignment: return assignment_at[ref.index];
      case PartKind::None: break;
    }
    return {};
  };

  const bool preflight_ok = diag.ok();
  auto assembled = assemble(std::move(parts), options.assembly);
  for (const auto& v : assembled.violations) {
    const auto at = locate(v.where);
    diag.add({v.severity, at.file, at.line, v.code, v.message});
  }
  if (preflight_ok && assembled.thesaurus) result.thesaurus = std::move(assembled.thesaurus);
  diag.sort();
  return result;
}

AssembleResult load_bundle(const BundlePaths& paths, const IngestOptions& options) {
  auto parsed = parse_bundle(paths, options);
  if (!parsed.diagnostics.ok()) return {std::nullopt, std::move(parsed.diagnostics)};
  auto assembled = assemble_thesaurus(parsed.records, options);
  parsed.diagnostics.append(assembled.diagnostics);
  parsed.diagnostics.sort();
  assembled.diagnostics = std::move(parsed.diagnostics);
  return assembled;
}

// ---------------------------------------------------------------------------
// Export

namespace {

class TableWriter {
 public:
  TableWriter(const fs::path& path, const std::vector<std::string>& header) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot write '" + path.string() + "'");
    row(header);
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i].find_first_of("\t\r\n") != std::string::npos) {
        throw std::invalid_argument("value cannot be written to TSV: '" + fields[i] + "'");
      }
      out_ << (i ? "\t" : "") << fields[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

}  // namespace

void export_bundle(const Thesaurus& t, const fs::path& dir) {
  fs::create_directories(dir);
  const auto paths = BundlePaths::in_directory(dir);

  TableWriter terms(paths.terms, {"id", "kind"});
  TableWriter labels(paths.labels, {"term_id", "lang", "label"});
  TableWriter assignments(paths.assignments, {"term_id", "notation"});
  for (const auto& [id, term] : t.terms()) {
    terms.row({id.str(), to_code(term.kind)});
    for (const auto& [lang, label] : term.labels) labels.row({id.str(), lang.str(), label});
    for (const auto& code : term.classification_codes) assignments.row({id.str(), code});
  }

  TableWriter relations(paths.relations, {"kind", "source_id", "target_id", "group_key"});
  for (const auto& r : t.semantic_relations()) relations.row({to_code(r.kind), r.source.str(), r.target.str(), ""});
  for (const auto& e : t.equivalences()) {
    relations.row({to_code(RelationCode::USE), e.non_preferred.str(), e.preferred.str(), ""});
  }
  for (const auto& [key, c] : t.compounds()) {
    for (const auto& comp : c.components) {
      relations.row({to_code(RelationCode::USE_COMB), c.non_preferred.str(), comp.str(), key});
    }
  }

  TableWriter classification(paths.classification, {"notation", "parent_notation", "lang", "label"});
  for (const auto& [notation, node] : t.classification()) {
    for (const auto& [lang, label] : node.labels) {
      classification.row({notation, node.parent.value_or(""), lang.str(), label});
    }
  }
}

}  // namespace skoskit::ingest
