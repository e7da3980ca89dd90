#pragma once

// CSV output: mandatory header row, RFC 4180 quoting, and deterministic
// full-precision scientific notation for floating-point cells.

#include <cstdint>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace hjc {

using CsvCell = std::variant<std::string, double, std::int64_t, std::uint64_t>;

std::string csv_format_cell(const CsvCell& cell);

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<CsvCell>& cells);  // length must match header
    void close();  // flush and check stream health (throws io_error)
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::size_t n_columns_;
    std::ofstream out_;
};

} // namespace hjc
