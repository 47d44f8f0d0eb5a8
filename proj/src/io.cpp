#include "swq/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <vector>

#include "swq/error.hpp"

namespace swq::io {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_number(std::string_view s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || first == last) return std::nullopt;
  return v;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Dataset read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw FormatError("missing header", line_no);
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

  std::vector<std::string> header;
  for (auto f : split(line)) header.emplace_back(trim(f));

  std::optional<std::size_t> id_col, x_col, y_col;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "id") id_col = c;
    else if (header[c] == "x") x_col = c;
    else if (header[c] == "y") y_col = c;
  }
  if (!id_col)
    for (std::size_t c = 0; c < header.size() && !id_col; ++c)
      if (ends_with(header[c], "_id")) id_col = c;
  if (!id_col) throw FormatError("header has no id column", line_no);
  if (!x_col) throw FormatError("header has no x column", line_no);
  if (!y_col) throw FormatError("header has no y column", line_no);

  std::vector<std::size_t> attr_cols;
  std::vector<std::string> attr_names;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == *id_col || c == *x_col || c == *y_col) continue;
    if (header[c].empty()) throw FormatError("empty column name", line_no);
    attr_cols.push_back(c);
    attr_names.push_back(header[c]);
  }

  std::vector<Point> points;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != header.size())
      throw FormatError("expected " + std::to_string(header.size()) + " fields, found " +
                            std::to_string(fields.size()),
                        line_no);
    Point p;
    p.id = std::string(trim(fields[*id_col]));
    if (p.id.empty()) throw FormatError("empty id", line_no);
    auto coord = [&](std::size_t c, const char* name) {
      auto v = parse_number(trim(fields[c]));
      if (!v) throw FormatError(std::string("bad ") + name + " value '" + std::string(fields[c]) + "'", line_no);
      return *v;
    };
    p.x = coord(*x_col, "x");
    p.y = coord(*y_col, "y");
    for (std::size_t a = 0; a < attr_cols.size(); ++a) {
      const auto f = trim(fields[attr_cols[a]]);
      if (f.empty()) {
        p.attrs.emplace(attr_names[a], std::nullopt);
        continue;
      }
      auto v = parse_number(f);
      if (!v || !std::isfinite(*v))
        throw FormatError("bad value '" + std::string(f) + "' for " + attr_names[a], line_no);
      p.attrs.emplace(attr_names[a], *v);
    }
    points.push_back(std::move(p));
  }
  if (in.bad()) throw IoError("read failure");
  return Dataset::from_points(std::move(points), std::move(attr_names), header[*id_col]);
}

Dataset read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_csv(in);
}

void write_csv(const Dataset& ds, std::ostream& out) {
  out << ds.id_name() << ",x,y";
  for (const auto& a : ds.attr_names()) out << ',' << a;
  out << '\n';
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const Point& p = ds.point(i);
    out << p.id << ',' << format_double(p.x) << ',' << format_double(p.y);
    for (std::size_t a = 0; a < ds.attr_names().size(); ++a) {
      out << ',';
      if (auto v = ds.value(a, i)) out << format_double(*v);
    }
    out << '\n';
  }
}

void write_csv(const ResultTable& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << quote(table.columns[c]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (const auto* s = std::get_if<std::string>(&row[c]))
        out << quote(*s);
      else if (const auto* d = std::get_if<double>(&row[c]))
        out << format_double(*d);
    }
    out << '\n';
  }
}

}  // namespace swq::io
