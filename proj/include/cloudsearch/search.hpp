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

#include "cloudsearch/acquisition.hpp"
#include "cloudsearch/backend.hpp"
#include "cloudsearch/cost.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cloudsearch {

enum class PolicyKind { random, grid, smbo };
enum class SurrogateKind { gp, rf };

std::string_view to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(std::string_view text);
std::string_view to_string(SurrogateKind kind);
SurrogateKind surrogate_kind_from_string(std::string_view text);

struct SearchPolicy {
    PolicyKind kind = PolicyKind::random;
    SurrogateKind surrogate = SurrogateKind::gp; // smbo only
    AcquisitionSpec acquisition;                 // smbo only
};

struct Budget {
    int max_observations = 32;
    int init_random = 8;
    ObservationMode mode = ObservationMode::full;
};

struct SearchState {
    std::vector<Observation> history;
    std::optional<Observation> best_so_far; // cheapest feasible observation
    double accumulated_charge_usd = 0.0;
};

struct SearchResult {
    SearchState state;
    /// Cheapest objective cost seen up to each step; NaN until the first
    /// feasible observation.
    std::vector<double> best_cost_curve;
    std::vector<double> accumulated_charge_curve;
    CloudConfiguration recommendation;
    /// Fitted hyperparameters of the last surrogate refit (diagnostics).
    std::string model_dump;
};

/// Money billed for observing a configuration that fails to run: the
/// cluster is up for `failure_detect_s` before the crash is noticed.
double failure_charge(const VmType& vm, int n, double failure_detect_s);

/// Sum of charged costs over the history, infeasible observations included.
double accumulated_search_cost(const SearchState& state);

/// Runs one seeded search over the backend's space.
///
/// random draws distinct configurations uniformly; grid walks the grid in
/// flat-index order; smbo spends init_random random observations, then
/// repeats fit -> acquire -> observe. Infeasible observations are charged
/// and consume budget but never enter the surrogate data or the solution.
/// Identical seeds give identical results.
SearchResult run_search(const SearchPolicy& policy, const ObservationBackend& backend,
                        const Budget& budget, std::uint64_t seed);

} // namespace cloudsearch
