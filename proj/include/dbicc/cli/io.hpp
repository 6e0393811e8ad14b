#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dbicc/core_model.hpp"
#include "dbicc/errors.hpp"

namespace dbicc::cli {

/// Malformed input file. Line and column are 1-based; 0 means "not known".
class InputParseError : public Error {
 public:
  InputParseError(const std::filesystem::path& file, std::size_t line, std::size_t column,
                  const std::string& message);

  const std::filesystem::path& file() const { return file_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::filesystem::path file_;
  std::size_t line_;
  std::size_t column_;
};

enum class InputFormat { auto_detect, vector, distance, manifest };

InputFormat parse_input_format(const std::string& name);

/// Sniffs the header line: `individual,replicate,path` is a manifest,
/// any other `individual,replicate,...` header a vector CSV, and a numeric
/// first line a distance matrix.
InputFormat detect_format(const std::filesystem::path& path);

/// Headerless numeric CSV as a dense matrix.
Matrix read_numeric_csv(const std::filesystem::path& path);

/// `individual,replicate,f1,...,fp`, one observation per row.
GroupedSample read_vector_csv(const std::filesystem::path& path);

/// Distance input plus the individual labels in index order.
struct DistanceInput {
  DistanceMatrix matrix;
  std::vector<std::string> individual_ids;
};

/// n x n headerless `distances` and a `row,individual,replicate` groups file
/// (row is 0-based).
DistanceInput read_distance_input(const std::filesystem::path& distances,
                                  const std::filesystem::path& groups);

/// `individual,replicate,path` manifest of headerless m x p scans. Relative
/// paths resolve against the manifest's directory. `columns`, when given,
/// keeps only those 0-based columns of every scan (an ROI subset).
GroupedSample read_timeseries_manifest(const std::filesystem::path& path,
                                       const std::optional<std::vector<std::size_t>>& columns = {});

/// Parses "0,3,5-9" into sorted unique indices.
std::vector<std::size_t> parse_index_list(const std::string& spec);

/// Writes a matrix as headerless CSV with `digits` significant digits.
void write_numeric_csv(const std::filesystem::path& path, const Matrix& values, int digits = 17);

/// Writes the two distance-input files for `d`.
void write_distance_input(const DistanceMatrix& d, const std::vector<std::string>& individual_ids,
                          const std::filesystem::path& distances,
                          const std::filesystem::path& groups);

/// "%.17g" formatting used by every numeric output.
std::string format_double(double v);

}  // namespace dbicc::cli
