#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "skoskit/diagnostics.hpp"

namespace skoskit::detail {

using TsvRow = std::vector<std::string>;
using TsvRowHandler = std::function<void(const TsvRow& row, std::size_t line)>;

/// Streams the data rows of a UTF-8 TSV file with an exact header row. Strips
/// a BOM, accepts CRLF, skips empty lines and NFC-normalizes every field.
/// Unreadable files, header mismatches, invalid UTF-8 and wrong field counts
/// are reported against `name` and the row is skipped. With `variable_width`
/// rows may carry more fields than the header.
void read_tsv(const std::filesystem::path& path, const std::string& name, const std::vector<std::string>& header,
              Diagnostics& diag, const TsvRowHandler& handler, bool variable_width = false);

}  // namespace skoskit::detail
