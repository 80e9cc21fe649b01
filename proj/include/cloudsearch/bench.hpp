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

#include "cloudsearch/backend.hpp"
#include "cloudsearch/pareto.hpp"
#include "cloudsearch/search.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cloudsearch {

struct StrategySpec {
    std::string name;
    SearchPolicy policy;
};

struct ExperimentSpec {
    std::filesystem::path catalog_path;
    std::vector<int> sizes = default_size_axis();
    std::string backend_spec; // "synth:FILE" or "trace:FILE"
    std::string workload;     // trace backends; empty selects a single-workload trace
    Budget budget;
    int repetitions = 50;
    std::uint64_t base_seed = 0;
    double failure_detect_s = 120.0;
    std::vector<StrategySpec> strategies;
    int threads = 0; // 0 = hardware concurrency
};

struct StrategyReport {
    std::string name;
    SearchPolicy policy;
    // Geometric means across repetitions, one entry per observation step.
    std::vector<double> geomean_best_curve;
    std::vector<double> geomean_charge_full_curve;
    std::vector<double> geomean_charge_pi_curve;
    std::vector<double> final_best_per_rep;
    double geomean_final_best = 0.0;
    // Filled by normalize_to_random when a random baseline exists.
    std::vector<double> normalized_to_random_curve; // strategy / random, per step
    double improvement_factor_vs_random = 0.0;      // random / strategy at the last step
    // (geomean final best - optimum) / optimum; NaN when no optimum is known.
    double gap_to_optimum = 0.0;
    std::vector<FrontPoint> recommendations;
    std::vector<std::string> recommendation_vm_names; // parallel to recommendations
    double recommendation_front_area = 0.0;
};

struct ExperimentReport {
    ExperimentSpec spec;
    bool optimum_available = false;
    CloudConfiguration optimum_config;
    std::string optimum_vm_name;
    double optimum_cost_usd = 0.0;
    std::vector<StrategyReport> strategies;
};

/// exp(mean(log values)); every value must be > 0.
double geometric_mean(const std::vector<double>& values);

/// Runs repetitions seeded base_seed..base_seed+reps-1 for every strategy
/// (paired initializations), aggregates by geometric mean, and computes
/// full- and PI-mode accumulated charges for the same trajectories.
/// Deterministic given the spec, regardless of thread count.
ExperimentReport run_experiment(const ExperimentSpec& spec, const ObservationBackend& backend);

/// Convenience overload that builds the space and backend from the spec.
ExperimentReport run_experiment(const ExperimentSpec& spec);

/// Divides every strategy's best-cost curve by the random baseline's and
/// records final improvement factors. Throws ValidationError when the
/// report has no random strategy.
void normalize_to_random(ExperimentReport& report);

/// (geomean final best - optimum) / optimum for one strategy.
double gap_to_optimum(const StrategyReport& strategy, double optimum_cost_usd);

} // namespace cloudsearch
