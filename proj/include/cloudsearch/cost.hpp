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

#include "cloudsearch/catalog.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace cloudsearch {

enum class ObservationMode { full, pi };

std::string_view to_string(ObservationMode mode);
ObservationMode observation_mode_from_string(std::string_view text);

/// Wall times of the first paramount iterations of a run, plus how many
/// iterations the complete run would execute.
struct PiMeasurement {
    std::vector<double> iteration_times_s;
    long long total_iterations = 0;
};

/// The record of evaluating one configuration.
///
/// charged_cost_usd is the money the observation itself cost (a few
/// iterations in PI mode, the whole run in full mode, a failure charge for
/// infeasible configurations). objective_cost_usd is the full-run cost the
/// search minimizes, estimated from whatever runtime the mode exposes.
struct Observation {
    CloudConfiguration config;
    double runtime_estimate_s = 0.0;
    double charged_cost_usd = 0.0;
    double objective_cost_usd = 0.0;
    bool feasible = false;
    ObservationMode mode = ObservationMode::full;
};

/// Cluster cost in USD: runtime/3600 * hourly price * instance count.
double config_cost(double runtime_s, double price_usd_hour, int n);

/// Linear extrapolation mean(iteration times) * total iterations.
double pi_runtime_estimate(const PiMeasurement& pi);

/// Money spent on an early-stopped run: only the executed iterations bill.
double pi_charge(const PiMeasurement& pi, double price_usd_hour, int n);

/// Share of a workload's full execution time consumed by its first four
/// paramount iterations. Ships with the measured NPB kernel values.
class PiFractionTable {
public:
    static PiFractionTable npb_defaults();

    /// Parses an override file: CSV `workload,fraction`.
    static PiFractionTable from_csv(std::string_view content);

    /// Looks up `workload` (e.g. "cg/C"): exact id first, then the kernel
    /// part before '/'. Case-insensitive. Throws LookupError when absent.
    double fraction(std::string_view workload) const;

    void set(std::string workload, double fraction);

private:
    std::map<std::string, double, std::less<>> fractions_;
};

} // namespace cloudsearch
