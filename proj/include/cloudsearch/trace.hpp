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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace cloudsearch {

/// One recorded execution: a (workload, vm, n) cell with its paramount
/// iteration times and, when the run completed, the full runtime.
struct TraceRow {
    std::string workload; // combined id, e.g. "cg/C"
    std::string vm_name;
    int n = 1;
    std::vector<double> pi_times_s;
    long long total_iterations = 0;
    std::optional<double> total_runtime_s;
    bool feasible = false;
};

/// An indexed, immutable set of trace rows. Safe for concurrent lookups.
class Trace {
public:
    /// Header: workload,class,vm_name,n,pi_times_s,total_iterations,total_runtime_s,feasible
    /// pi_times_s is ';'-separated seconds; empty class folds into the
    /// workload id; duplicates of (workload, vm_name, n) are rejected.
    /// Unknown VM names are tolerated here and surface at lookup.
    static Trace parse(std::string_view content);
    static Trace load_file(const std::filesystem::path& path);

    const TraceRow* find(std::string_view workload, std::string_view vm_name, int n) const;
    const TraceRow& at(std::string_view workload, std::string_view vm_name, int n) const;

    std::size_t size() const { return rows_.size(); }
    const std::vector<TraceRow>& rows() const { return rows_; }

    /// Sorted unique workload ids.
    std::vector<std::string> workloads() const;

private:
    std::vector<TraceRow> rows_;
    std::map<std::tuple<std::string, std::string, int>, std::size_t, std::less<>> index_;
};

std::string trace_header();
std::string trace_row_to_csv(const TraceRow& row);

} // namespace cloudsearch
