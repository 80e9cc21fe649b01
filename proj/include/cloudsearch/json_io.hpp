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

#include "cloudsearch/bench.hpp"
#include "cloudsearch/search.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>

namespace cloudsearch {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Metadata identifying one search run in its emitted result.
struct SearchRunInfo {
    SearchPolicy policy;
    Budget budget;
    std::uint64_t seed = 0;
    std::string backend_spec;
    std::string workload;
};

Json search_result_to_json(const SearchResult& result, const SearchRunInfo& info,
                           const ConfigurationSpace& space);

/// Reads the history entries of a search-result JSON back into
/// observations (the subset of fields the Pareto tooling needs), plus the
/// VM names by index.
struct ParsedSearchResult {
    std::vector<Observation> history;
    std::map<int, std::string> vm_names;
};
ParsedSearchResult parse_search_result(const Json& json);

Json experiment_spec_to_json(const ExperimentSpec& spec);
ExperimentSpec experiment_spec_from_json(const Json& json);

Json experiment_report_to_json(const ExperimentReport& report);

/// Flattens a report's curves into CSV rows
/// step,strategy,geomean_best,geomean_charge_full,geomean_charge_pi.
std::string report_curves_to_csv(const Json& report_json);

} // namespace cloudsearch
