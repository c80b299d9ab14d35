#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace taxview::detail {

struct CsvRow {
  std::size_t line = 0;  // 1-based
  std::vector<std::string> fields;
};

// RFC-4180 style: comma separator, double-quote quoting with "" escapes,
// LF or CRLF record ends. Embedded newlines are rejected. Blank lines are
// skipped. Throws SchemaError("line N").
std::vector<CsvRow> read_csv(std::string_view text);

// Quotes the field when it contains a comma, quote, CR, or LF.
std::string csv_field(std::string_view field);

std::string csv_line(const std::vector<std::string>& fields);

}  // namespace taxview::detail
