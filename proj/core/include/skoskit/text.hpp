#pragma once

#include <string>
#include <string_view>

namespace skoskit::text {

/// True when `s` is well-formed UTF-8 (no overlongs, no surrogates).
bool is_valid_utf8(std::string_view s);

/// Unicode NFC. Input must be valid UTF-8.
std::string nfc(std::string_view s);

/// Full Unicode case folding followed by NFC, used as the matching key for labels.
std::string fold(std::string_view s);

/// Decodes UTF-8 into Unicode scalar values. Input must be valid UTF-8.
std::u32string to_u32(std::string_view s);

std::string to_utf8(std::u32string_view s);

/// Number of Unicode scalar values.
std::size_t length(std::string_view s);

std::string percent_encode_segment(std::string_view s);

}  // namespace skoskit::text
