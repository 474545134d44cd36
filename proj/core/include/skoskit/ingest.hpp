#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skoskit/diagnostics.hpp"
#include "skoskit/model.hpp"

namespace skoskit::ingest {

// Interchange bundle: five UTF-8 TSV files, each with an exact header row.
//
//   terms.tsv           id  kind                       kind in {D, ND, AD}
//   labels.tsv          term_id  lang  label
//   relations.tsv       kind  source_id  target_id  group_key
//                       kind in {BT, NT, RT, USE, USE_COMB}; group_key only for USE_COMB,
//                       one row per component, component order = row order
//   classification.tsv  notation  parent_notation  lang  label
//   assignments.tsv     term_id  notation
//
// LF or CRLF line endings; a leading BOM is ignored; every field is NFC-normalized.

inline constexpr const char* kTermsFile = "terms.tsv";
inline constexpr const char* kLabelsFile = "labels.tsv";
inline constexpr const char* kRelationsFile = "relations.tsv";
inline constexpr const char* kClassificationFile = "classification.tsv";
inline constexpr const char* kAssignmentsFile = "assignments.tsv";

struct BundlePaths {
  std::filesystem::path terms;
  std::filesystem::path labels;
  std::filesystem::path relations;
  std::filesystem::path classification;
  std::filesystem::path assignments;

  static BundlePaths in_directory(const std::filesystem::path& dir);
};

struct SourceLocation {
  std::string file;
  std::size_t line = 0;
};

struct TermRecord {
  TermId id;
  TermKind kind;
  SourceLocation at;
};

struct LabelRecord {
  TermId term;
  LanguageTag lang;
  std::string label;
  SourceLocation at;
};

enum class RelationCode { BT, NT, RT, USE, USE_COMB };

struct RelationRecord {
  RelationCode kind;
  TermId source;
  TermId target;
  std::string group_key;
  SourceLocation at;
};

struct ClassificationRecord {
  std::string notation;
  std::optional<std::string> parent;
  LanguageTag lang;
  std::string label;
  SourceLocation at;
};

struct AssignmentRecord {
  TermId term;
  std::string notation;
  SourceLocation at;
};

struct RecordSet {
  std::vector<TermRecord> terms;
  std::vector<LabelRecord> labels;
  std::vector<RelationRecord> relations;
  std::vector<ClassificationRecord> classification;
  std::vector<AssignmentRecord> assignments;

  std::size_t count(RelationCode kind) const;
  /// Number of distinct USE_COMB group keys.
  std::size_t compound_groups() const;
};

struct IngestOptions {
  std::set<LanguageTag> languages = default_languages();
  LanguageTag pivot = default_pivot();
  AssemblyOptions assembly;
};

struct ParseResult {
  RecordSet records;
  Diagnostics diagnostics;
};

/// Reads all five files. Malformed rows are reported with file and line and
/// skipped; parsing always continues to the end of every file.
ParseResult parse_bundle(const BundlePaths& paths, const IngestOptions& options = {});

struct AssembleResult {
  std::optional<Thesaurus> thesaurus;
  Diagnostics diagnostics;
};

/// Builds a validated Thesaurus from parsed records; structural violations are
/// anchored at the row that introduced them.
AssembleResult assemble_thesaurus(const RecordSet& records, const IngestOptions& options = {});

/// parse_bundle followed by assemble_thesaurus when parsing produced no errors.
AssembleResult load_bundle(const BundlePaths& paths, const IngestOptions& options = {});

/// Writes `thesaurus` as a bundle into `dir` (created if needed). Throws
/// std::invalid_argument for values that cannot be represented in TSV.
void export_bundle(const Thesaurus& thesaurus, const std::filesystem::path& dir);

}  // namespace skoskit::ingest
