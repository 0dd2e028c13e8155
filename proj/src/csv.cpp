#include "kdv/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "kdv/error.hpp"

namespace kdv {
namespace {

std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

}  // namespace

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable::Row CsvTable::row() {
  rows_.emplace_back();
  return Row(rows_.back());
}

CsvTable::Row& CsvTable::Row::operator<<(double value) {
  cells_.push_back(format_double(value));
  return *this;
}

CsvTable::Row& CsvTable::Row::operator<<(const std::string& value) {
  cells_.push_back(value);
  return *this;
}

CsvTable::Row& CsvTable::Row::operator<<(std::size_t value) {
  cells_.push_back(std::to_string(value));
  return *this;
}

std::string CsvTable::str() const {
  std::string out;
  auto append = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += quote(cells[i]);
    }
    out += '\n';
  };
  append(header_);
  for (const auto& r : rows_) append(r);
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != header_.size()) {
      throw std::runtime_error(fmt::format("row {} of {} has {} cells, expected {}", i,
                                           path.string(), rows_[i].size(), header_.size()));
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << str();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<double> read_csv_column(const std::filesystem::path& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open profile file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path.string() + " is empty");
  const auto header = split_line(line);
  std::size_t index = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == column) index = i;
  }
  if (index == header.size()) {
    throw ConfigError(fmt::format("{} has no column named \"{}\"", path.string(), column));
  }
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_line(line);
    if (cells.size() <= index) {
      throw ConfigError(fmt::format("{}:{}: missing column \"{}\"", path.string(), line_no, column));
    }
    const std::string& cell = cells[index];
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
      throw ConfigError(fmt::format("{}:{}: \"{}\" is not a number", path.string(), line_no, cell));
    }
    values.push_back(value);
  }
  return values;
}

}  // namespace kdv
