#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nnsort/core.hpp"

namespace nnsort::io {

// Column selector for CSV input: a header name or a zero-based index.
using ColumnRef = std::variant<std::string, std::size_t>;

struct CsvColumn {
  std::vector<Key> keys;
  std::size_t row_count = 0;  // data rows, header excluded
  bool had_header = false;
};

// Reads one numeric column. A header row is assumed when the selected cell
// of the first row does not parse as a number (always when selecting by name).
// Throws DataError for a missing column or a non-numeric cell, citing the
// 1-based line number.
CsvColumn read_csv_column(const std::filesystem::path& path, const ColumnRef& column);

// .bin: raw little-endian 64-bit floats. .csv: single numeric column,
// header optional. Anything else is rejected.
std::vector<Key> read_dataset(const std::filesystem::path& path);
void write_dataset(const std::filesystem::path& path, std::span<const Key> keys);

std::vector<Key> read_binary_keys(const std::filesystem::path& path);
void write_binary_keys(const std::filesystem::path& path, std::span<const Key> keys);
// Writes a "key" header and one shortest round-trip decimal per row.
void write_csv_keys(const std::filesystem::path& path, std::span<const Key> keys);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

}  // namespace nnsort::io
