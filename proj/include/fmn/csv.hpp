#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace fmn {

/// Minimal RFC-4180 CSV reader/writer. Quoted fields may contain commas,
/// doubled quotes and newlines; records are returned fully unescaped.
namespace csv {

/// Parse a whole CSV document into rows of fields.
std::vector<std::vector<std::string>> parse(std::string_view text);

/// Read and parse a CSV file (UTF-8). Throws ParseError if unreadable.
std::vector<std::vector<std::string>> parse_file(const std::string& path);

/// Escape a single field if needed.
std::string escape(std::string_view field);

/// Write one row (escaping each field) terminated by '\n'.
void write_row(std::ostream& os, const std::vector<std::string>& fields);

}  // namespace csv
}  // namespace fmn
