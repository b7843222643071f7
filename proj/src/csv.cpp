#include "fairtune/csv.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fairtune/errors.hpp"

namespace fairtune {

std::size_t CsvTable::column(std::string_view name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
        throw ConfigError("column '" + std::string(name) + "' not found in CSV header");
    return static_cast<std::size_t>(it - header.begin());
}

bool CsvTable::has_column(std::string_view name) const {
    return std::find(header.begin(), header.end(), name) != header.end();
}

CsvTable parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            if (!field.empty() || field_was_quoted)
                throw ConfigError("malformed CSV: quote inside unquoted field");
            in_quotes = true;
            field_was_quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r') {
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
            end_record();
        } else if (c == '\n') {
            end_record();
        } else {
            field += c;
        }
    }
    if (in_quotes) throw ConfigError("malformed CSV: unterminated quoted field");
    // Final record without trailing newline.
    if (!field.empty() || field_was_quoted || !record.empty()) end_record();

    if (records.empty()) throw ConfigError("CSV has no header row");

    CsvTable table;
    table.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size()) {
            throw ConfigError("CSV row " + std::to_string(r) + " has " +
                              std::to_string(records[r].size()) + " fields, expected " +
                              std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(records[r]));
    }
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failure: " + path.string());
    return parse_csv(buf.str());
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        const std::string& f = fields[i];
        bool needs_quotes = f.find_first_of(",\"\r\n") != std::string::npos;
        if (needs_quotes) {
            out += '"';
            for (char c : f) {
                if (c == '"') out += '"';
                out += c;
            }
            out += '"';
        } else {
            out += f;
        }
    }
    out += '\n';
    return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write file: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("write failure: " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace fairtune
