#include "dbicc/cli/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>
#include <unordered_map>

namespace dbicc::cli {

namespace fs = std::filesystem;

namespace {

struct Field {
  std::string_view text;
  std::size_t column = 1;  // 1-based character position of the field start
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<Field> split_fields(std::string_view line) {
  std::vector<Field> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const auto raw = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
    std::size_t lead = 0;
    while (lead < raw.size() && (raw[lead] == ' ' || raw[lead] == '\t')) ++lead;
    out.push_back({trim(raw), start + lead + 1});
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputParseError(path, 0, 0, "cannot open file");
  return in;
}

double parse_number(const fs::path& path, std::size_t line, const Field& f) {
  double v = 0.0;
  const char* begin = f.text.data();
  const char* end = begin + f.text.size();
  if (!f.text.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (f.text.empty() || ec != std::errc() || ptr != end) {
    throw InputParseError(path, line, f.column,
                          "expected a number, found '" + std::string(f.text) + "'");
  }
  return v;
}

std::size_t parse_index(const fs::path& path, std::size_t line, const Field& f) {
  std::size_t v = 0;
  const char* end = f.text.data() + f.text.size();
  const auto [ptr, ec] = std::from_chars(f.text.data(), end, v);
  if (f.text.empty() || ec != std::errc() || ptr != end) {
    throw InputParseError(path, line, f.column,
                          "expected a non-negative integer, found '" + std::string(f.text) + "'");
  }
  return v;
}

void expect_header(const fs::path& path, const std::vector<Field>& fields,
                   const std::vector<std::string_view>& names) {
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (k >= fields.size() || fields[k].text != names[k]) {
      const std::size_t col = k < fields.size() ? fields[k].column : 1;
      throw InputParseError(path, 1, col, "expected header column '" + std::string(names[k]) + "'");
    }
  }
}

bool numeric_less(const std::string& a, const std::string& b) {
  long long ia = 0, ib = 0;
  const auto ra = std::from_chars(a.data(), a.data() + a.size(), ia);
  const auto rb = std::from_chars(b.data(), b.data() + b.size(), ib);
  const bool a_int = !a.empty() && ra.ec == std::errc() && ra.ptr == a.data() + a.size();
  const bool b_int = !b.empty() && rb.ec == std::errc() && rb.ptr == b.data() + b.size();
  if (a_int && b_int) return ia < ib;
  return a < b;
}

}  // namespace

InputParseError::InputParseError(const fs::path& file, std::size_t line, std::size_t column,
                                 const std::string& message)
    : Error("InputParseError", file.string() +
                                   (line ? ":" + std::to_string(line) : std::string()) +
                                   (column ? ":" + std::to_string(column) : std::string()) +
                                   ": " + message),
      file_(file),
      line_(line),
      column_(column) {}

InputFormat parse_input_format(const std::string& name) {
  if (name == "auto") return InputFormat::auto_detect;
  if (name == "vector") return InputFormat::vector;
  if (name == "distance") return InputFormat::distance;
  if (name == "manifest") return InputFormat::manifest;
  throw ParameterError("unknown input format '" + name + "'");
}

InputFormat detect_format(const fs::path& path) {
  auto in = open_input(path);
  std::string line;
  while (std::getline(in, line) && is_blank(line)) {
  }
  std::string_view view = trim(line);
  if (view.size() >= 3 && static_cast<unsigned char>(view[0]) == 0xEF) view.remove_prefix(3);
  const auto fields = split_fields(view);
  if (fields.size() >= 2 && fields[0].text == "individual" && fields[1].text == "replicate") {
    if (fields.size() == 3 && fields[2].text == "path") return InputFormat::manifest;
    return InputFormat::vector;
  }
  return InputFormat::distance;
}

Matrix read_numeric_csv(const fs::path& path) {
  auto in = open_input(path);
  std::vector<double> values;
  std::size_t cols = 0, rows = 0, line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto fields = split_fields(line);
    if (rows == 0) {
      cols = fields.size();
    } else if (fields.size() != cols) {
      throw InputParseError(path, line_no, 1,
                            "expected " + std::to_string(cols) + " fields, found " +
                                std::to_string(fields.size()));
    }
    for (const auto& f : fields) values.push_back(parse_number(path, line_no, f));
    ++rows;
  }
  if (rows == 0) throw InputParseError(path, 0, 0, "file contains no data");
  Matrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::copy(values.begin(), values.end(), out.data());
  return out;
}

GroupedSample read_vector_csv(const fs::path& path) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  std::vector<ObservationRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    std::string_view view = line;
    if (line_no == 1 && view.size() >= 3 && static_cast<unsigned char>(view[0]) == 0xEF) {
      view.remove_prefix(3);
    }
    const auto fields = split_fields(view);
    if (width == 0) {
      expect_header(path, fields, {"individual", "replicate"});
      if (fields.size() < 3) throw InputParseError(path, line_no, 1, "header has no feature columns");
      width = fields.size();
      continue;
    }
    if (fields.size() != width) {
      throw InputParseError(path, line_no, 1,
                            "expected " + std::to_string(width) + " fields, found " +
                                std::to_string(fields.size()));
    }
    ObservationRow row{std::string(fields[0].text), std::string(fields[1].text),
                       Matrix(static_cast<Eigen::Index>(width - 2), 1)};
    if (row.individual_id.empty()) throw InputParseError(path, line_no, 1, "empty individual id");
    for (std::size_t k = 2; k < width; ++k) {
      row.payload(static_cast<Eigen::Index>(k - 2), 0) = parse_number(path, line_no, fields[k]);
    }
    rows.push_back(std::move(row));
  }
  if (width == 0) throw InputParseError(path, 0, 0, "file is empty");
  return build_grouped_sample(rows, PayloadKind::vector);
}

DistanceInput read_distance_input(const fs::path& distances, const fs::path& groups) {
  Matrix values = read_numeric_csv(distances);

  auto in = open_input(groups);
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  struct Entry {
    std::size_t row;
    std::string individual;
    std::string replicate;
    std::size_t line;
  };
  std::vector<Entry> entries;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto fields = split_fields(line);
    if (!header) {
      expect_header(groups, fields, {"row", "individual", "replicate"});
      header = true;
      continue;
    }
    if (fields.size() != 3) {
      throw InputParseError(groups, line_no, 1, "expected 3 fields");
    }
    entries.push_back({parse_index(groups, line_no, fields[0]), std::string(fields[1].text),
                       std::string(fields[2].text), line_no});
  }
  const auto n = static_cast<std::size_t>(values.rows());
  if (entries.size() != n) {
    throw InputParseError(groups, 0, 0,
                          "groups file lists " + std::to_string(entries.size()) +
                              " rows but the distance matrix has " + std::to_string(n));
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.row < b.row; });
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k].row != k) {
      throw InputParseError(groups, entries[k].line, 1,
                            "rows must be 0.." + std::to_string(n - 1) + " each exactly once");
    }
  }

  std::vector<std::string> ids;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::vector<std::size_t>> rows_of;
  for (const auto& e : entries) {
    auto [it, inserted] = index.try_emplace(e.individual, ids.size());
    if (inserted) {
      ids.push_back(e.individual);
      rows_of.emplace_back();
    }
    rows_of[it->second].push_back(e.row);
  }
  std::vector<GroupLabel> labels(n);
  for (std::size_t i = 0; i < rows_of.size(); ++i) {
    auto& rows = rows_of[i];
    std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
      return numeric_less(entries[a].replicate, entries[b].replicate);
    });
    for (std::size_t j = 0; j < rows.size(); ++j) labels[rows[j]] = {i, j};
  }
  return {DistanceMatrix(std::move(values), std::move(labels)), std::move(ids)};
}

GroupedSample read_timeseries_manifest(const fs::path& path,
                                       const std::optional<std::vector<std::size_t>>& columns) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<ObservationRow> rows;
  const fs::path base = path.parent_path();
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    std::string_view view = line;
    if (line_no == 1 && view.size() >= 3 && static_cast<unsigned char>(view[0]) == 0xEF) {
      view.remove_prefix(3);
    }
    const auto fields = split_fields(view);
    if (!header) {
      expect_header(path, fields, {"individual", "replicate", "path"});
      header = true;
      continue;
    }
    if (fields.size() != 3) throw InputParseError(path, line_no, 1, "expected 3 fields");
    fs::path scan(std::string(fields[2].text));
    if (scan.is_relative()) scan = base / scan;
    Matrix x = read_numeric_csv(scan);
    if (columns) {
      Matrix subset(x.rows(), static_cast<Eigen::Index>(columns->size()));
      for (std::size_t k = 0; k < columns->size(); ++k) {
        const auto c = static_cast<Eigen::Index>((*columns)[k]);
        if (c >= x.cols()) {
          throw InputParseError(scan, 0, 0,
                                "column " + std::to_string(c) + " requested but scan has " +
                                    std::to_string(x.cols()) + " columns");
        }
        subset.col(static_cast<Eigen::Index>(k)) = x.col(c);
      }
      x = std::move(subset);
    }
    rows.push_back({std::string(fields[0].text), std::string(fields[1].text), std::move(x)});
  }
  if (!header) throw InputParseError(path, 0, 0, "file is empty");
  return build_grouped_sample(rows, PayloadKind::timeseries);
}

std::vector<std::size_t> parse_index_list(const std::string& spec) {
  std::vector<std::size_t> out;
  std::stringstream ss(spec);
  std::string item;
  auto to_index = [&](std::string_view s) {
    s = trim(s);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParameterError("bad index '" + std::string(s) + "' in list '" + spec + "'");
    }
    return v;
  };
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      out.push_back(to_index(item));
    } else {
      const auto lo = to_index(std::string_view(item).substr(0, dash));
      const auto hi = to_index(std::string_view(item).substr(dash + 1));
      if (hi < lo) throw ParameterError("descending range '" + item + "'");
      for (auto v = lo; v <= hi; ++v) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw ParameterError("empty index list");
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_numeric_csv(const fs::path& path, const Matrix& values, int digits) {
  std::ofstream out(path);
  if (!out) throw InputParseError(path, 0, 0, "cannot open file for writing");
  char buf[40];
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      if (c) out << ',';
      std::snprintf(buf, sizeof buf, "%.*g", digits, values(r, c));
      out << buf;
    }
    out << '\n';
  }
}

void write_distance_input(const DistanceMatrix& d, const std::vector<std::string>& individual_ids,
                          const fs::path& distances, const fs::path& groups) {
  write_numeric_csv(distances, d.values());
  std::ofstream out(groups);
  if (!out) throw InputParseError(groups, 0, 0, "cannot open file for writing");
  out << "row,individual,replicate\n";
  for (std::size_t a = 0; a < d.size(); ++a) {
    const auto& g = d.groups()[a];
    const std::string id =
        g.individual < individual_ids.size() ? individual_ids[g.individual] : std::to_string(g.individual);
    out << a << ',' << id << ',' << g.replicate + 1 << '\n';
  }
}

}  // namespace dbicc::cli
