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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cloudsearch {

struct CsvRecord {
    std::vector<std::string> fields;
    std::size_t line_number = 0;
};

/// Splits comma-separated content into records. Blank lines and lines whose
/// first non-space character is '#' are skipped. The first data line must
/// equal `expected_header` field-for-field (whitespace-trimmed) and is not
/// returned. No quoting; fields may not contain commas.
std::vector<CsvRecord> read_csv(std::string_view content, std::string_view expected_header);

double parse_double_field(const CsvRecord& record, std::size_t index, const char* what);
long long parse_int_field(const CsvRecord& record, std::size_t index, const char* what);
bool parse_bool_field(const CsvRecord& record, std::size_t index, const char* what);

/// Shortest decimal text that round-trips the value (std::to_chars).
std::string format_double(double value);

std::string read_text_file(const std::filesystem::path& path);

/// Writes to `<path>.tmp` then renames, so readers never see a torn file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char separator);

} // namespace cloudsearch
