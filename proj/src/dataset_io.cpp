#include "nnsort/dataset_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <string_view>

namespace nnsort::io {

namespace {

std::uint64_t to_little_endian(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    v = __builtin_bswap64(v);
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return std::nullopt;
  return value;
}

std::string join_names(const std::vector<std::string_view>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += '"';
    out += names[i];
    out += '"';
  }
  return out;
}

bool is_blank(std::string_view line) { return trim(line).empty() && line.find(',') == std::string_view::npos; }

}  // namespace

CsvColumn read_csv_column(const std::filesystem::path& path, const ColumnRef& column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open CSV file " + path.string());

  CsvColumn result;
  std::optional<std::size_t> index;
  if (const auto* i = std::get_if<std::size_t>(&column)) index = *i;

  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    auto cells = split_row(line);
    if (first) {
      first = false;
      if (!index) {
        const auto& name = std::get<std::string>(column);
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (cells[i] == name) index = i;
        }
        if (!index) {
          throw DataError("column \"" + name + "\" not found in " + path.string() +
                          "; available columns: " + join_names(cells));
        }
        result.had_header = true;
        continue;
      }
      if (*index >= cells.size()) {
        throw DataError("column index " + std::to_string(*index) + " out of range; row 1 has " +
                        std::to_string(cells.size()) + " columns: " + join_names(cells));
      }
      if (!parse_number(cells[*index])) {
        result.had_header = true;
        continue;
      }
    }
    if (*index >= cells.size()) {
      throw DataError("line " + std::to_string(line_no) + " of " + path.string() + " has no column " +
                      std::to_string(*index));
    }
    auto value = parse_number(cells[*index]);
    if (!value) {
      throw DataError("non-numeric cell \"" + std::string(cells[*index]) + "\" at line " +
                      std::to_string(line_no) + " of " + path.string());
    }
    result.keys.push_back(*value);
  }
  if (in.bad()) throw DataError("read error on " + path.string());
  result.row_count = result.keys.size();
  return result;
}

std::vector<Key> read_binary_keys(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset " + path.string());
  in.seekg(0, std::ios::end);
  const auto size = static_cast<std::size_t>(in.tellg());
  in.seekg(0, std::ios::beg);
  if (size % sizeof(std::uint64_t) != 0) {
    throw DataError("binary dataset " + path.string() + " size is not a multiple of 8 bytes");
  }
  std::vector<Key> keys(size / sizeof(std::uint64_t));
  std::array<char, sizeof(std::uint64_t)> buf{};
  for (auto& k : keys) {
    if (!in.read(buf.data(), buf.size())) throw DataError("short read on " + path.string());
    std::uint64_t raw = 0;
    std::memcpy(&raw, buf.data(), buf.size());
    k = std::bit_cast<double>(to_little_endian(raw));
  }
  return keys;
}

void write_binary_keys(const std::filesystem::path& path, std::span<const Key> keys) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write dataset " + path.string());
  for (Key k : keys) {
    const std::uint64_t raw = to_little_endian(std::bit_cast<std::uint64_t>(k));
    out.write(reinterpret_cast<const char*>(&raw), sizeof raw);
  }
  if (!out) throw DataError("write error on " + path.string());
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

void write_csv_keys(const std::filesystem::path& path, std::span<const Key> keys) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot write dataset " + path.string());
  out << "key\n";
  for (Key k : keys) out << format_double(k) << '\n';
  if (!out) throw DataError("write error on " + path.string());
}

std::vector<Key> read_dataset(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".bin") return read_binary_keys(path);
  if (ext == ".csv") return read_csv_column(path, std::size_t{0}).keys;
  throw DataError("unrecognized dataset extension '" + ext + "' (expected .bin or .csv)");
}

void write_dataset(const std::filesystem::path& path, std::span<const Key> keys) {
  const auto ext = path.extension().string();
  if (ext == ".bin") return write_binary_keys(path, keys);
  if (ext == ".csv") return write_csv_keys(path, keys);
  throw DataError("unrecognized dataset extension '" + ext + "' (expected .bin or .csv)");
}

}  // namespace nnsort::io
