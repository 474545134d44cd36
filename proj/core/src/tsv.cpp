#include "tsv.hpp"

#include <fstream>
#include <sstream>
#include <string_view>

#include "skoskit/text.hpp"

namespace skoskit::detail {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string join(const std::vector<std::string>& cols) {
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "\t" : "") + cols[i];
  return out;
}

}  // namespace

void read_tsv(const std::filesystem::path& path, const std::string& name, const std::vector<std::string>& header,
              Diagnostics& diag, const TsvRowHandler& handler, bool variable_width) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    diag.error(name, 0, "MISSING_FILE", "cannot open '" + path.string() + "'");
    return;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  std::string_view data(content);
  if (data.substr(0, 3) == "\xEF\xBB\xBF") data.remove_prefix(3);

  std::size_t line_no = 0;
  bool header_seen = false;
  while (!data.empty()) {
    const auto nl = data.find('\n');
    std::string_view line = data.substr(0, nl);
    data.remove_prefix(nl == std::string_view::npos ? data.size() : nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (!text::is_valid_utf8(line)) {
      diag.error(name, line_no, "BAD_ENCODING", "line is not valid UTF-8");
      if (!header_seen) return;
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      TsvRow got;
      for (auto f : split_tabs(line)) got.emplace_back(f);
      if (got != header) {
        diag.error(name, line_no, "BAD_HEADER",
                   "expected header '" + join(header) + "', got '" + std::string(line) + "'");
        return;
      }
      continue;
    }
    if (line.empty()) continue;

    const auto fields = split_tabs(line);
    const bool width_ok = variable_width ? fields.size() >= header.size() : fields.size() == header.size();
    if (!width_ok) {
      diag.error(name, line_no, "FIELD_COUNT",
                 "expected " + std::string(variable_width ? "at least " : "") + std::to_string(header.size()) +
                     " fields, got " + std::to_string(fields.size()));
      continue;
    }
    TsvRow row;
    row.reserve(fields.size());
    for (auto f : fields) row.push_back(text::nfc(f));
    handler(row, line_no);
  }
  if (!header_seen) diag.error(name, 0, "BAD_HEADER", "file is empty; expected header '" + join(header) + "'");
}

}  // namespace skoskit::detail
