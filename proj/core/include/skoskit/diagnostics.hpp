#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace skoskit {

enum class Severity { Error, Warning };

const char* to_string(Severity s);

/// A line-anchored finding. `line` is 1-based; 0 means the finding concerns
/// the whole file (e.g. a missing file) or has no source location.
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string file;
  std::size_t line = 0;
  std::string code;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

class Diagnostics {
 public:
  void error(std::string file, std::size_t line, std::string code, std::string message);
  void warning(std::string file, std::size_t line, std::string code, std::string message);
  void add(Diagnostic d);
  void append(const Diagnostics& other);

  /// Orders by (file, line, code, message) so output never depends on discovery order.
  void sort();

  const std::vector<Diagnostic>& errors() const { return errors_; }
  const std::vector<Diagnostic>& warnings() const { return warnings_; }
  bool ok() const { return errors_.empty(); }
  bool has_code(const std::string& code) const;
  std::size_t count(const std::string& code) const;

  /// One `file:line: severity CODE: message` line per finding, errors first.
  std::string to_text() const;
  /// A single JSON document: {"errors": [...], "warnings": [...]}.
  std::string to_json() const;

  friend bool operator==(const Diagnostics&, const Diagnostics&) = default;

 private:
  std::vector<Diagnostic> errors_;
  std::vector<Diagnostic> warnings_;
};

}  // namespace skoskit
