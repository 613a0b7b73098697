#ifndef FRCOMPLEX_CSV_HPP
#define FRCOMPLEX_CSV_HPP

// Minimal RFC 4180 reading and writing: quoted fields, doubled quotes,
// CRLF tolerated. Enough for manifests and feature tables.

#include <charconv>
#include <istream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "frcomplex/errors.hpp"

namespace frcomplex::csv {

using Row = std::vector<std::string>;

struct Table {
  Row header;
  std::vector<Row> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row
};

inline Table read(std::istream& in, const std::string& source) {
  Table t;
  Row row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  std::size_t row_line = 1;
  bool first_char = true;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = row.size() == 1 && row[0].empty();
    if (!blank) {
      if (t.header.empty()) {
        t.header = std::move(row);
      } else {
        t.rows.push_back(std::move(row));
        t.line_numbers.push_back(row_line);
      }
    }
    row.clear();
  };
  char c;
  while (in.get(c)) {
    if (first_char) {
      first_char = false;
      // UTF-8 BOM
      if (c == '\xEF') {
        char b1 = 0, b2 = 0;
        if (in.get(b1) && in.get(b2) && b1 == '\xBB' && b2 == '\xBF') continue;
        throw ParseError(source, 1, "unexpected leading bytes");
      }
    }
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r') {
      continue;
    } else if (c == '\n') {
      end_row();
      ++line;
      row_line = line;
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes) throw ParseError(source, row_line, "unterminated quoted field");
  if (field_started || !row.empty()) end_row();
  return t;
}

inline std::string escape(std::string_view v) {
  if (v.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(v);
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s, const std::string& source, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ParseError(source, line, "invalid number '" + std::string(s) + "'");
  return v;
}

}  // namespace frcomplex::csv

#endif  // FRCOMPLEX_CSV_HPP
