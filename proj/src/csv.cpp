/*
 * Copyright 2026 The cloudsearch Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cloudsearch/csv.hpp"

#include "cloudsearch/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace cloudsearch {

std::string trim(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) {
        --end;
    }
    return std::string(text.substr(begin, end - begin));
}

std::vector<std::string> split(std::string_view text, char separator) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(separator, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(text.substr(start));
            return parts;
        }
        parts.emplace_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

namespace {

std::vector<std::string> split_trimmed(std::string_view line) {
    std::vector<std::string> fields;
    for (const std::string& raw : split(line, ',')) {
        fields.push_back(trim(raw));
    }
    return fields;
}

[[noreturn]] void field_error(const CsvRecord& record, std::size_t index, const char* what,
                              const char* reason) {
    std::ostringstream msg;
    msg << "line " << record.line_number << ": " << reason << " " << what;
    if (index < record.fields.size()) {
        msg << " '" << record.fields[index] << "'";
    }
    throw ParseError(msg.str());
}

const std::string& field_at(const CsvRecord& record, std::size_t index, const char* what) {
    if (index >= record.fields.size()) {
        field_error(record, index, what, "missing field");
    }
    return record.fields[index];
}

} // namespace

std::vector<CsvRecord> read_csv(std::string_view content, std::string_view expected_header) {
    const std::vector<std::string> expected_fields = split_trimmed(expected_header);
    std::vector<CsvRecord> records;
    bool header_seen = false;

    std::size_t line_number = 0;
    std::size_t start = 0;
    while (start <= content.size()) {
        std::size_t end = content.find('\n', start);
        if (end == std::string_view::npos) {
            end = content.size();
        }
        std::string_view line = content.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        ++line_number;
        const std::size_t next = end + 1;

        const std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed.front() == '#') {
            if (end == content.size()) {
                break;
            }
            start = next;
            continue;
        }

        std::vector<std::string> fields = split_trimmed(line);
        if (!header_seen) {
            if (fields != expected_fields) {
                std::ostringstream msg;
                msg << "line " << line_number << ": expected header '" << expected_header
                    << "', got '" << trimmed << "'";
                throw ParseError(msg.str());
            }
            header_seen = true;
        } else {
            if (fields.size() != expected_fields.size()) {
                std::ostringstream msg;
                msg << "line " << line_number << ": expected " << expected_fields.size()
                    << " fields, got " << fields.size();
                throw ParseError(msg.str());
            }
            records.push_back(CsvRecord{std::move(fields), line_number});
        }

        if (end == content.size()) {
            break;
        }
        start = next;
    }

    if (!header_seen) {
        throw ValidationError("empty file: no header line found");
    }
    return records;
}

double parse_double_field(const CsvRecord& record, std::size_t index, const char* what) {
    const std::string& text = field_at(record, index, what);
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        field_error(record, index, what, "malformed number for");
    }
    return value;
}

long long parse_int_field(const CsvRecord& record, std::size_t index, const char* what) {
    const std::string& text = field_at(record, index, what);
    long long value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        field_error(record, index, what, "malformed integer for");
    }
    return value;
}

bool parse_bool_field(const CsvRecord& record, std::size_t index, const char* what) {
    const std::string& text = field_at(record, index, what);
    if (text == "true" || text == "1") {
        return true;
    }
    if (text == "false" || text == "0") {
        return false;
    }
    field_error(record, index, what, "malformed boolean for");
}

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) {
        throw NumericError("failed to format double");
    }
    return std::string(buffer, ptr);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw ParseError("cannot open file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return buffer.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
        if (!stream) {
            throw ParseError("cannot open file for writing: " + tmp.string());
        }
        stream.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!stream) {
            throw ParseError("failed writing file: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

} // namespace cloudsearch
