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

#include "cloudsearch/trace.hpp"

#include "cloudsearch/csv.hpp"
#include "cloudsearch/errors.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace cloudsearch {

namespace {

constexpr std::string_view kTraceHeader =
    "workload,class,vm_name,n,pi_times_s,total_iterations,total_runtime_s,feasible";

std::vector<double> parse_pi_times(const CsvRecord& record, std::size_t index) {
    const std::string& text = record.fields[index];
    std::vector<double> times;
    if (trim(text).empty()) {
        return times;
    }
    for (const std::string& part : split(text, ';')) {
        const std::string item = trim(part);
        double value = 0.0;
        const char* begin = item.data();
        const char* end = begin + item.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr != end) {
            std::ostringstream msg;
            msg << "line " << record.line_number << ": malformed PI time '" << item << "'";
            throw ParseError(msg.str());
        }
        times.push_back(value);
    }
    return times;
}

void validate_row(const TraceRow& row, std::size_t line_number) {
    std::ostringstream prefix;
    prefix << "line " << line_number << ": ";
    if (row.workload.empty()) {
        throw ValidationError(prefix.str() + "empty workload id");
    }
    if (row.vm_name.empty()) {
        throw ValidationError(prefix.str() + "empty vm_name");
    }
    if (row.n < 1) {
        throw ValidationError(prefix.str() + "n must be >= 1");
    }
    if (!row.feasible) {
        return; // infeasible rows may omit timings
    }
    if (row.pi_times_s.empty()) {
        throw ValidationError(prefix.str() + "feasible row has no PI times");
    }
    for (double t : row.pi_times_s) {
        if (t <= 0.0) {
            throw ValidationError(prefix.str() + "PI times must be > 0");
        }
    }
    if (row.total_iterations < static_cast<long long>(row.pi_times_s.size())) {
        throw ValidationError(prefix.str() + "total_iterations smaller than measured iterations");
    }
    if (row.total_runtime_s && *row.total_runtime_s <= 0.0) {
        throw ValidationError(prefix.str() + "total_runtime_s must be > 0 when present");
    }
}

} // namespace

Trace Trace::parse(std::string_view content) {
    Trace trace;
    for (const CsvRecord& record : read_csv(content, kTraceHeader)) {
        TraceRow row;
        const std::string& kernel = record.fields[0];
        const std::string& klass = record.fields[1];
        row.workload = klass.empty() ? kernel : kernel + "/" + klass;
        row.vm_name = record.fields[2];
        row.n = static_cast<int>(parse_int_field(record, 3, "n"));
        row.pi_times_s = parse_pi_times(record, 4);
        row.total_iterations = trim(record.fields[5]).empty()
                                   ? 0
                                   : parse_int_field(record, 5, "total_iterations");
        if (!trim(record.fields[6]).empty()) {
            row.total_runtime_s = parse_double_field(record, 6, "total_runtime_s");
        }
        row.feasible = parse_bool_field(record, 7, "feasible");
        validate_row(row, record.line_number);

        auto key = std::make_tuple(row.workload, row.vm_name, row.n);
        if (trace.index_.contains(key)) {
            std::ostringstream msg;
            msg << "line " << record.line_number << ": duplicate trace row for (" << row.workload
                << ", " << row.vm_name << ", " << row.n << ")";
            throw ValidationError(msg.str());
        }
        trace.index_.emplace(std::move(key), trace.rows_.size());
        trace.rows_.push_back(std::move(row));
    }
    return trace;
}

Trace Trace::load_file(const std::filesystem::path& path) {
    return parse(read_text_file(path));
}

const TraceRow* Trace::find(std::string_view workload, std::string_view vm_name, int n) const {
    const auto it = index_.find(std::make_tuple(std::string(workload), std::string(vm_name), n));
    if (it == index_.end()) {
        return nullptr;
    }
    return &rows_[it->second];
}

const TraceRow& Trace::at(std::string_view workload, std::string_view vm_name, int n) const {
    const TraceRow* row = find(workload, vm_name, n);
    if (row == nullptr) {
        std::ostringstream msg;
        msg << "no trace row for (" << workload << ", " << vm_name << ", " << n << ")";
        throw LookupError(msg.str());
    }
    return *row;
}

std::vector<std::string> Trace::workloads() const {
    std::set<std::string> unique;
    for (const TraceRow& row : rows_) {
        unique.insert(row.workload);
    }
    return std::vector<std::string>(unique.begin(), unique.end());
}

std::string trace_header() {
    return std::string(kTraceHeader);
}

std::string trace_row_to_csv(const TraceRow& row) {
    std::ostringstream out;
    const std::size_t slash = row.workload.find('/');
    if (slash == std::string::npos) {
        out << row.workload << ","; // empty class column
    } else {
        out << row.workload.substr(0, slash) << "," << row.workload.substr(slash + 1);
    }
    out << "," << row.vm_name << "," << row.n << ",";
    for (std::size_t i = 0; i < row.pi_times_s.size(); ++i) {
        if (i > 0) {
            out << ";";
        }
        out << format_double(row.pi_times_s[i]);
    }
    out << "," << row.total_iterations << ",";
    if (row.total_runtime_s) {
        out << format_double(*row.total_runtime_s);
    }
    out << "," << (row.feasible ? "true" : "false");
    return out.str();
}

} // namespace cloudsearch
