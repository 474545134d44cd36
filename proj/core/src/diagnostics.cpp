#include "skoskit/diagnostics.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

namespace skoskit {

namespace {

void sort_list(std::vector<Diagnostic>& list) {
  std::stable_sort(list.begin(), list.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.file, a.line, a.code, a.message) < std::tie(b.file, b.line, b.code, b.message);
  });
}

}  // namespace

const char* to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

void Diagnostics::error(std::string file, std::size_t line, std::string code, std::string message) {
  errors_.push_back({Severity::Error, std::move(file), line, std::move(code), std::move(message)});
}

void Diagnostics::warning(std::string file, std::size_t line, std::string code, std::string message) {
  warnings_.push_back({Severity::Warning, std::move(file), line, std::move(code), std::move(message)});
}

void Diagnostics::add(Diagnostic d) {
  (d.severity == Severity::Error ? errors_ : warnings_).push_back(std::move(d));
}

void Diagnostics::append(const Diagnostics& other) {
  errors_.insert(errors_.end(), other.errors_.begin(), other.errors_.end());
  warnings_.insert(warnings_.end(), other.warnings_.begin(), other.warnings_.end());
}

void Diagnostics::sort() {
  sort_list(errors_);
  sort_list(warnings_);
}

bool Diagnostics::has_code(const std::string& code) const { return count(code) > 0; }

std::size_t Diagnostics::count(const std::string& code) const {
  auto match = [&](const Diagnostic& d) { return d.code == code; };
  return static_cast<std::size_t>(std::count_if(errors_.begin(), errors_.end(), match) +
                                  std::count_if(warnings_.begin(), warnings_.end(), match));
}

std::string Diagnostics::to_text() const {
  std::ostringstream os;
  for (const auto* list : {&errors_, &warnings_}) {
    for (const auto& d : *list) {
      os << (d.file.empty() ? "-" : d.file) << ':' << d.line << ": " << to_string(d.severity) << ' ' << d.code
         << ": " << d.message << '\n';
    }
  }
  return os.str();
}

std::string Diagnostics::to_json() const {
  auto list = [](const std::vector<Diagnostic>& items) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& d : items) {
      arr.push_back({{"file", d.file}, {"line", d.line}, {"code", d.code}, {"message", d.message}});
    }
    return arr;
  };
  nlohmann::json doc = {{"errors", list(errors_)}, {"warnings", list(warnings_)}};
  return doc.dump() + "\n";
}

}  // namespace skoskit
