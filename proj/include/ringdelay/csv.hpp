#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ringdelay {

/// %.17g, which round-trips every finite double.
[[nodiscard]] std::string format_double(double v);

/// Comma-separated table with a header row. Cells are stored as text.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by name; throws IoError when absent.
    [[nodiscard]] std::size_t column(std::string_view name) const;
    /// Parses a cell as a double; throws IoError on malformed text.
    [[nodiscard]] double number(std::size_t row, std::size_t col) const;
};

/// Writes with LF line endings. Throws IoError on failure.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
[[nodiscard]] CsvTable read_csv(const std::filesystem::path& path);

}  // namespace ringdelay
