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

#include "cloudsearch/cost.hpp"

#include "cloudsearch/csv.hpp"
#include "cloudsearch/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace cloudsearch {

std::string_view to_string(ObservationMode mode) {
    return mode == ObservationMode::full ? "full" : "pi";
}

ObservationMode observation_mode_from_string(std::string_view text) {
    if (text == "full") {
        return ObservationMode::full;
    }
    if (text == "pi") {
        return ObservationMode::pi;
    }
    throw ValidationError("unknown observation mode: " + std::string(text));
}

double config_cost(double runtime_s, double price_usd_hour, int n) {
    if (runtime_s < 0.0) {
        throw ValidationError("runtime must be >= 0");
    }
    if (price_usd_hour <= 0.0) {
        throw ValidationError("price must be > 0");
    }
    if (n < 1) {
        throw ValidationError("instance count must be >= 1");
    }
    return runtime_s / 3600.0 * price_usd_hour * static_cast<double>(n);
}

namespace {

void validate_pi(const PiMeasurement& pi) {
    if (pi.iteration_times_s.empty()) {
        throw ValidationError("paramount-iteration measurement has no iteration times");
    }
    for (double t : pi.iteration_times_s) {
        if (t <= 0.0) {
            throw ValidationError("iteration times must be > 0");
        }
    }
    if (pi.total_iterations < static_cast<long long>(pi.iteration_times_s.size())) {
        throw ValidationError("total_iterations must be >= number of measured iterations");
    }
}

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

double pi_runtime_estimate(const PiMeasurement& pi) {
    validate_pi(pi);
    const double sum =
        std::accumulate(pi.iteration_times_s.begin(), pi.iteration_times_s.end(), 0.0);
    const double mean = sum / static_cast<double>(pi.iteration_times_s.size());
    return mean * static_cast<double>(pi.total_iterations);
}

double pi_charge(const PiMeasurement& pi, double price_usd_hour, int n) {
    validate_pi(pi);
    const double executed_s =
        std::accumulate(pi.iteration_times_s.begin(), pi.iteration_times_s.end(), 0.0);
    return config_cost(executed_s, price_usd_hour, n);
}

PiFractionTable PiFractionTable::npb_defaults() {
    PiFractionTable table;
    table.set("cg", 0.0443);
    table.set("ft", 0.1733);
    table.set("mg", 0.12);
    table.set("is", 0.40);
    table.set("ep", 0.01); // reported only as "less than 1%"
    return table;
}

PiFractionTable PiFractionTable::from_csv(std::string_view content) {
    PiFractionTable table;
    for (const CsvRecord& record : read_csv(content, "workload,fraction")) {
        const double fraction = parse_double_field(record, 1, "fraction");
        table.set(record.fields[0], fraction);
    }
    return table;
}

void PiFractionTable::set(std::string workload, double fraction) {
    if (fraction <= 0.0 || fraction > 1.0) {
        throw ValidationError("PI fraction must lie in (0, 1]: " + workload);
    }
    fractions_[lower(workload)] = fraction;
}

double PiFractionTable::fraction(std::string_view workload) const {
    const std::string key = lower(workload);
    if (const auto it = fractions_.find(key); it != fractions_.end()) {
        return it->second;
    }
    // "cg/C" falls back to its kernel "cg".
    if (const std::size_t slash = key.find('/'); slash != std::string::npos) {
        if (const auto it = fractions_.find(key.substr(0, slash)); it != fractions_.end()) {
            return it->second;
        }
    }
    throw LookupError("no PI fraction recorded for workload: " + std::string(workload));
}

} // namespace cloudsearch
