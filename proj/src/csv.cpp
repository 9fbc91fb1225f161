#include "fsp/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "fsp/errors.hpp"

namespace fsp {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("write_csv: cannot open '" + path + "' for writing");
  }
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  emit(header);
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw Error("write_csv: row width " + std::to_string(row.size()) +
                  " != header width " + std::to_string(header.size()));
    }
    emit(row);
  }
  if (!out) {
    throw Error("write_csv: write to '" + path + "' failed");
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    std::string field = line.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    // Trim surrounding blanks; numbers never contain interior spaces.
    const auto first = field.find_first_not_of(" \t");
    const auto last = field.find_last_not_of(" \t");
    fields.push_back(first == std::string::npos
                         ? std::string()
                         : field.substr(first, last - first + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_number(const std::string& field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end && !field.empty();
}

}  // namespace

Matrixd read_numeric_csv(const std::string& path, HeaderMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("read_numeric_csv: cannot open '" + path + "'");
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  bool header_decided = mode != HeaderMode::Auto;
  bool skip_first = mode == HeaderMode::Yes;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;  // blank lines (typically trailing) are ignored
    const auto fields = split_fields(line);
    if (!header_decided) {
      // Auto mode: a first line with any non-numeric cell is a header.
      header_decided = true;
      double tmp;
      bool all_numeric = true;
      for (const auto& f : fields) {
        if (!parse_number(f, tmp)) {
          all_numeric = false;
          break;
        }
      }
      if (!all_numeric) continue;
    } else if (skip_first) {
      skip_first = false;
      continue;
    }
    if (width == 0) {
      width = fields.size();
    } else if (fields.size() != width) {
      throw ParseError(path + ": row " + std::to_string(lineno) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(width));
    }
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (!parse_number(fields[c], row[c])) {
        throw ParseError(path + ": row " + std::to_string(lineno) +
                         ", column " + std::to_string(c + 1) +
                         ": cannot parse '" + fields[c] + "' as a number");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw ParseError(path + ": no data rows");
  }
  Matrixd out(Index(rows.size()), Index(width));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      out(Index(r), Index(c)) = rows[r][c];
    }
  }
  return out;
}

}  // namespace fsp
