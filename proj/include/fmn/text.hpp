#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fmn {

/// Canonical word form used throughout the toolkit: whitespace-trimmed and
/// ASCII-lowercased. Bytes outside ASCII (accented letters etc.) pass through
/// untouched, so diacritics are preserved.
std::string normalize_word(std::string_view raw);

/// Trim leading/trailing ASCII whitespace.
std::string trim(std::string_view s);

/// Split on a single-character delimiter; fields are not trimmed.
std::vector<std::string> split(std::string_view s, char delim);

/// True if the string is empty after trimming.
bool is_blank(std::string_view s);

/// Parse a whole string as a decimal integer; throws ArgumentError otherwise.
int parse_int(std::string_view s);

}  // namespace fmn
