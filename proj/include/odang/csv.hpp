#pragma once
// Small CSV/TSV reader: header row mandatory, quoted fields with "" escapes,
// newlines allowed inside quotes, UTF-8 passthrough. The delimiter is
// explicit; pick_delimiter() maps file extensions.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "odang/errors.hpp"

namespace odang {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // -1 when absent
  int column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
  }
};

inline char pick_delimiter(std::string_view path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".tsv") return '\t';
  return ',';
}

inline Table parse_delimited(std::string_view text, char delim) {
  Table table;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool record_started = false;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    end_field();
    if (table.header.empty()) {
      table.header = std::move(record);
    } else {
      table.rows.push_back(std::move(record));
    }
    record.clear();
    record_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      in_quotes = true;
      record_started = true;
    } else if (c == delim) {
      end_field();
      record_started = true;
    } else if (c == '\n') {
      if (record_started || !field.empty() || !record.empty()) end_record();
    } else if (c == '\r') {
      // \r\n line endings collapse; a lone \r mid-field is kept
      if (i + 1 < text.size() && text[i + 1] == '\n') continue;
      field += c;
    } else {
      field += c;
      record_started = true;
    }
  }
  if (record_started || !field.empty() || !record.empty()) end_record();

  if (table.header.empty()) {
    throw Error("delimited file has no header row");
  }
  return table;
}

}  // namespace odang
