#include "ringdelay/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ringdelay/errors.hpp"

namespace ringdelay {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == name) return c;
    }
    throw IoError("csv: no column named '" + std::string(name) + "'");
}

double CsvTable::number(std::size_t row, std::size_t col) const {
    const std::string& text = rows.at(row).at(col);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw IoError("csv: malformed number '" + text + "'");
    }
    return v;
}

namespace {

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c) os << ',';
        os << cells[c];
    }
    os << '\n';
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

}  // namespace

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    write_row(os, table.header);
    for (const auto& row : table.rows) write_row(os, row);
    if (!os) throw IoError("write failed for '" + path.string() + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
    CsvTable table;
    std::string line;
    if (!std::getline(is, line)) throw IoError("csv: missing header in '" + path.string() + "'");
    table.header = split(line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto cells = split(line);
        if (cells.size() != table.header.size()) {
            throw IoError("csv: row width does not match header in '" + path.string() + "'");
        }
        table.rows.push_back(std::move(cells));
    }
    return table;
}

}  // namespace ringdelay
