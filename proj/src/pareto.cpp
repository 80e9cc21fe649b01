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

#include "cloudsearch/pareto.hpp"

#include "cloudsearch/errors.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace cloudsearch {

bool dominates(const FrontPoint& a, const FrontPoint& b) {
    return a.runtime_s <= b.runtime_s && a.cost_usd <= b.cost_usd &&
           (a.runtime_s < b.runtime_s || a.cost_usd < b.cost_usd);
}

ParetoFront pareto_front(std::vector<FrontPoint> points) {
    if (points.empty()) {
        throw ValidationError("cannot build a Pareto front from no points");
    }
    for (const FrontPoint& p : points) {
        if (p.runtime_s <= 0.0 || p.cost_usd <= 0.0) {
            throw ValidationError("front points need positive runtime and cost");
        }
    }

    // Deterministic processing order; equal (runtime, cost) pairs keep the
    // lowest grid coordinate.
    std::sort(points.begin(), points.end(), [](const FrontPoint& a, const FrontPoint& b) {
        return std::tie(a.runtime_s, a.cost_usd, a.config.vm_index, a.config.n) <
               std::tie(b.runtime_s, b.cost_usd, b.config.vm_index, b.config.n);
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const FrontPoint& a, const FrontPoint& b) {
                                 return a.runtime_s == b.runtime_s && a.cost_usd == b.cost_usd;
                             }),
                 points.end());

    ParetoFront front;
    for (const FrontPoint& candidate : points) {
        const bool dominated = std::any_of(points.begin(), points.end(), [&](const FrontPoint& other) {
            return dominates(other, candidate);
        });
        if (!dominated) {
            front.points.push_back(candidate);
        }
    }
    // Already runtime-ascending from the processing sort.
    return front;
}

std::vector<std::array<double, 2>> normalize_objectives(const std::vector<FrontPoint>& points) {
    if (points.empty()) {
        return {};
    }
    double runtime_min = points.front().runtime_s;
    double runtime_max = runtime_min;
    double cost_min = points.front().cost_usd;
    double cost_max = cost_min;
    for (const FrontPoint& p : points) {
        runtime_min = std::min(runtime_min, p.runtime_s);
        runtime_max = std::max(runtime_max, p.runtime_s);
        cost_min = std::min(cost_min, p.cost_usd);
        cost_max = std::max(cost_max, p.cost_usd);
    }

    const auto scale = [](double value, double min, double max) {
        if (max == min) {
            return 1.0; // a degenerate axis makes every point best
        }
        return (max - value) / (max - min);
    };

    std::vector<std::array<double, 2>> normalized;
    normalized.reserve(points.size());
    for (const FrontPoint& p : points) {
        normalized.push_back({scale(p.runtime_s, runtime_min, runtime_max),
                              scale(p.cost_usd, cost_min, cost_max)});
    }
    return normalized;
}

double front_area(const std::vector<std::array<double, 2>>& normalized_front) {
    if (normalized_front.empty()) {
        return 0.0;
    }
    std::vector<std::array<double, 2>> sorted = normalized_front;
    std::sort(sorted.begin(), sorted.end());

    double area = 0.0;
    double previous_x = 0.0;
    for (const auto& [x, y] : sorted) {
        area += (x - previous_x) * y;
        previous_x = x;
    }
    return area;
}

std::vector<FrontPoint> observed_union(const std::vector<std::vector<Observation>>& runs) {
    struct Tally {
        double runtime_s = 0.0;
        double cost_usd = 0.0;
        int runs_selecting = 0;
    };
    std::map<std::pair<int, int>, Tally> by_config;
    for (const std::vector<Observation>& run : runs) {
        std::map<std::pair<int, int>, Tally> in_this_run;
        for (const Observation& obs : run) {
            if (!obs.feasible) {
                continue;
            }
            const std::pair<int, int> key{obs.config.vm_index, obs.config.n};
            in_this_run[key] = Tally{obs.runtime_estimate_s, obs.objective_cost_usd, 1};
        }
        for (const auto& [key, tally] : in_this_run) {
            Tally& total = by_config[key];
            total.runtime_s = tally.runtime_s;
            total.cost_usd = tally.cost_usd;
            total.runs_selecting += 1;
        }
    }
    if (by_config.empty()) {
        throw ValidationError("no feasible observation across the runs");
    }

    std::vector<FrontPoint> observed;
    observed.reserve(by_config.size());
    for (const auto& [key, tally] : by_config) {
        FrontPoint p;
        p.config = CloudConfiguration{key.first, key.second};
        p.runtime_s = tally.runtime_s;
        p.cost_usd = tally.cost_usd;
        p.selection_frequency =
            static_cast<double>(tally.runs_selecting) / static_cast<double>(runs.size());
        observed.push_back(p);
    }
    return observed;
}

std::vector<FrontPoint> recommend(const std::vector<std::vector<Observation>>& runs) {
    ParetoFront front = pareto_front(observed_union(runs));
    // Cost-efficient end first: runtime descending.
    std::reverse(front.points.begin(), front.points.end());
    return front.points;
}

} // namespace cloudsearch
