#include "csv.hpp"

#include "taxview/errors.hpp"

namespace taxview::detail {

namespace {

std::string line_loc(std::size_t line) { return "line " + std::to_string(line); }

}  // namespace

std::vector<CsvRow> read_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  std::size_t line = 1;
  std::size_t pos = 0;
  if (text.starts_with("\xEF\xBB\xBF")) pos = 3;

  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    if (raw.ends_with('\r')) raw.remove_suffix(1);
    pos = end + 1;

    if (raw.empty()) {
      ++line;
      continue;
    }

    CsvRow row{line, {}};
    std::string field;
    std::size_t i = 0;
    bool field_start = true;
    bool quoted = false;
    while (i <= raw.size()) {
      if (i == raw.size()) {
        if (quoted) throw SchemaError(line_loc(line), "unterminated quoted field");
        row.fields.push_back(std::move(field));
        break;
      }
      char c = raw[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < raw.size() && raw[i + 1] == '"') {
            field += '"';
            i += 2;
            continue;
          }
          quoted = false;
          ++i;
          if (i < raw.size() && raw[i] != ',') {
            throw SchemaError(line_loc(line), "unexpected character after closing quote");
          }
          continue;
        }
        field += c;
        ++i;
        continue;
      }
      if (c == '"' && field_start) {
        quoted = true;
        field_start = false;
        ++i;
        continue;
      }
      if (c == '"') throw SchemaError(line_loc(line), "stray quote in unquoted field");
      if (c == '\r') throw SchemaError(line_loc(line), "embedded carriage return");
      if (c == ',') {
        row.fields.push_back(std::move(field));
        field.clear();
        field_start = true;
        ++i;
        continue;
      }
      field += c;
      field_start = false;
      ++i;
    }
    rows.push_back(std::move(row));
    ++line;
  }
  return rows;
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
  return out;
}

}  // namespace taxview::detail
