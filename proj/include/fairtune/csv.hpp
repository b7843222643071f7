#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fairtune {

/// RFC 4180 table with a header row. Cells are kept as raw strings.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a header column; throws ConfigError if absent.
    std::size_t column(std::string_view name) const;
    bool has_column(std::string_view name) const;
};

/// Parses RFC 4180 text (quoted fields, embedded commas/quotes/newlines,
/// CRLF or LF line endings). Throws ConfigError on ragged rows or a
/// malformed quote.
CsvTable parse_csv(std::string_view text);

/// Reads and parses a CSV file. Throws IoError if unreadable.
CsvTable read_csv(const std::filesystem::path& path);

/// Serializes one CSV record, quoting fields only when required.
std::string csv_line(const std::vector<std::string>& fields);

/// Writes a file atomically (write to a temp sibling, then rename).
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace fairtune
