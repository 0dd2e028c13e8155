#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace kdv {

/// 17 significant digits, '.' decimal separator regardless of locale.
std::string format_double(double value);

/// Header row plus data rows, rendered RFC 4180 style with '\n' line ends.
/// Cells containing a comma, quote or newline are quoted.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  class Row {
   public:
    Row& operator<<(double value);
    Row& operator<<(const std::string& value);
    Row& operator<<(const char* value) { return *this << std::string(value); }
    Row& operator<<(std::size_t value);

   private:
    friend class CsvTable;
    explicit Row(std::vector<std::string>& cells) : cells_(cells) {}
    std::vector<std::string>& cells_;
  };

  /// Appends an empty row and returns a builder for its cells.
  Row row();

  const std::vector<std::string>& header() const { return header_; }
  std::size_t size() const { return rows_.size(); }
  std::string str() const;

  /// Throws std::runtime_error on I/O failure or a ragged row.
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Read one named column of doubles from a CSV file with a header row.
std::vector<double> read_csv_column(const std::filesystem::path& path, const std::string& column);

}  // namespace kdv
