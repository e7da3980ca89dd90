#include "hjc/csv.hpp"

#include <cmath>
#include <cstdio>

#include "hjc/errors.hpp"

namespace hjc {

namespace {

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

} // namespace

std::string csv_format_cell(const CsvCell& cell) {
    char buf[48];
    if (const auto* s = std::get_if<std::string>(&cell)) return quote_if_needed(*s);
    if (const auto* d = std::get_if<double>(&cell)) {
        if (std::isnan(*d)) return "nan";
        std::snprintf(buf, sizeof buf, "%.16e", *d);
        return buf;
    }
    if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(*i));
        return buf;
    }
    const auto u = std::get<std::uint64_t>(cell);
    std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(u));
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : path_(path), n_columns_(header.size()), out_(path, std::ios::binary) {
    if (!out_) throw io_error("cannot open CSV output file: " + path);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << quote_if_needed(header[i]);
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<CsvCell>& cells) {
    if (cells.size() != n_columns_)
        throw param_error("CSV row length does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << csv_format_cell(cells[i]);
    }
    out_ << '\n';
}

void CsvWriter::close() {
    out_.flush();
    if (!out_) throw io_error("failed writing CSV file: " + path_);
    out_.close();
}

} // namespace hjc
