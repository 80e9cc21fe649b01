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
#include "cloudsearch/cost.hpp"

#include <array>
#include <vector>

namespace cloudsearch {

/// One candidate on the runtime/cost plane, with how often repeated runs
/// selected it.
struct FrontPoint {
    CloudConfiguration config;
    double runtime_s = 0.0;
    double cost_usd = 0.0;
    double selection_frequency = 1.0;
};

/// Non-dominated points, sorted by runtime ascending (hence cost strictly
/// descending).
struct ParetoFront {
    std::vector<FrontPoint> points;
};

/// a dominates b when a is <= in both objectives and < in at least one.
bool dominates(const FrontPoint& a, const FrontPoint& b);

/// Extracts exactly the non-dominated subset (both objectives minimized).
/// Duplicate (runtime, cost) pairs keep the lowest grid coordinate.
/// Throws ValidationError on empty input.
ParetoFront pareto_front(std::vector<FrontPoint> points);

/// Per axis v -> (max - v)/(max - min): best value maps to 1, worst to 0.
/// A degenerate axis (all values equal) maps to 1. Output order matches
/// input; coordinate 0 is runtime, 1 is cost.
std::vector<std::array<double, 2>> normalize_objectives(const std::vector<FrontPoint>& points);

/// Area of the unit square dominated by a normalized front toward the
/// (1, 1) corner (staircase sum, reference point (0, 0)). Points must be
/// mutually non-dominated in that maximization sense. Empty front -> 0.
double front_area(const std::vector<std::array<double, 2>>& normalized_front);

/// Every feasible configuration the runs observed, one FrontPoint per
/// config, with selection_frequency = share of runs that observed it.
/// Sorted by grid coordinate. Throws ValidationError when no run observed
/// a feasible point.
std::vector<FrontPoint> observed_union(const std::vector<std::vector<Observation>>& runs);

/// Pareto front of everything the runs observed, annotated with selection
/// frequencies, ordered from the cost-efficient end to the runtime-efficient
/// end (runtime descending). Throws ValidationError when no run observed a
/// feasible point.
std::vector<FrontPoint> recommend(const std::vector<std::vector<Observation>>& runs);

} // namespace cloudsearch
