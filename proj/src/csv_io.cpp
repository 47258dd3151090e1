#include "ovb/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

namespace ovb {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

bool parse_cell(std::string_view raw, double& value) {
  const std::string_view cell = trim(raw);
  if (cell.empty()) return false;
  const auto [ptr, ec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), value);
  return ec == std::errc() && ptr == cell.data() + cell.size() &&
         std::isfinite(value);
}

}  // namespace

Dataset load_csv(const std::string& path, bool drop_na) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t nl = text.find('\n', start);
      if (nl == std::string::npos) {
        if (start < text.size()) lines.push_back({text.data() + start, text.size() - start});
        break;
      }
      lines.push_back({text.data() + start, nl - start});
      start = nl + 1;
    }
  }
  if (lines.empty()) fail(errc::empty_dataset, "'" + path + "' is empty");

  std::vector<std::string> names;
  for (std::string_view f : split_fields(lines[0]))
    names.emplace_back(trim(f));

  std::vector<std::vector<double>> columns(names.size());
  std::vector<std::string> problems;
  std::size_t n_bad = 0;

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::size_t row = li;  // 1-based, header excluded
    const auto fields = split_fields(lines[li]);

    std::string problem;
    std::vector<double> parsed(names.size());
    if (fields.size() != names.size()) {
      problem = "row " + std::to_string(row) + ": expected " +
                std::to_string(names.size()) + " fields, got " +
                std::to_string(fields.size());
    } else {
      for (std::size_t c = 0; c < fields.size(); ++c) {
        if (!parse_cell(fields[c], parsed[c])) {
          problem = "row " + std::to_string(row) + ", column '" + names[c] +
                    "': cannot parse '" + std::string(trim(fields[c])) + "'";
          break;
        }
      }
    }

    if (!problem.empty()) {
      ++n_bad;
      if (drop_na) continue;
      if (problems.size() < 20) problems.push_back(std::move(problem));
      continue;
    }
    for (std::size_t c = 0; c < parsed.size(); ++c)
      columns[c].push_back(parsed[c]);
  }

  if (!drop_na && n_bad > 0) {
    std::string msg = "'" + path + "' has " + std::to_string(n_bad) +
                      " unparseable row(s): ";
    for (std::size_t i = 0; i < problems.size(); ++i) {
      if (i) msg += "; ";
      msg += problems[i];
    }
    if (n_bad > problems.size())
      msg += "; and " + std::to_string(n_bad - problems.size()) + " more";
    fail(errc::parse_error, msg);
  }
  if (columns.empty() || columns[0].empty())
    fail(errc::empty_dataset, "'" + path + "' has no data rows");

  Dataset data;
  for (std::size_t c = 0; c < names.size(); ++c)
    data.add_column(names[c], std::move(columns[c]));
  return data;
}

void write_csv(const Dataset& data, std::ostream& out) {
  const auto& names = data.column_names();
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (c) out << ',';
    out << names[c];
  }
  out << '\n';

  std::vector<const std::vector<double>*> cols;
  cols.reserve(names.size());
  for (const auto& n : names) cols.push_back(&data.column(n));

  char buf[32];
  for (std::size_t r = 0; r < data.n_rows(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) out << ',';
      std::snprintf(buf, sizeof buf, "%.17g", (*cols[c])[r]);
      out << buf;
    }
    out << '\n';
  }
}

void write_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot open '" + path + "' for writing");
  write_csv(data, out);
  if (!out) fail(errc::io_error, "failed while writing '" + path + "'");
}

}  // namespace ovb
