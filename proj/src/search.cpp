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

#include "cloudsearch/search.hpp"

#include "cloudsearch/errors.hpp"
#include "cloudsearch/rng.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

namespace cloudsearch {

std::string_view to_string(PolicyKind kind) {
    switch (kind) {
    case PolicyKind::random:
        return "random";
    case PolicyKind::grid:
        return "grid";
    case PolicyKind::smbo:
        return "smbo";
    }
    return "random";
}

PolicyKind policy_kind_from_string(std::string_view text) {
    if (text == "random") {
        return PolicyKind::random;
    }
    if (text == "grid") {
        return PolicyKind::grid;
    }
    if (text == "smbo") {
        return PolicyKind::smbo;
    }
    throw ValidationError("unknown policy: " + std::string(text));
}

std::string_view to_string(SurrogateKind kind) {
    return kind == SurrogateKind::gp ? "gp" : "rf";
}

SurrogateKind surrogate_kind_from_string(std::string_view text) {
    if (text == "gp") {
        return SurrogateKind::gp;
    }
    if (text == "rf") {
        return SurrogateKind::rf;
    }
    throw ValidationError("unknown surrogate: " + std::string(text));
}

double failure_charge(const VmType& vm, int n, double failure_detect_s) {
    if (failure_detect_s == 0.0) {
        return 0.0;
    }
    return config_cost(failure_detect_s, vm.price_usd_hour, n);
}

double accumulated_search_cost(const SearchState& state) {
    return std::accumulate(state.history.begin(), state.history.end(), 0.0,
                           [](double sum, const Observation& obs) {
                               return sum + obs.charged_cost_usd;
                           });
}

namespace {

void validate_budget(const Budget& budget) {
    if (budget.max_observations < 1) {
        throw ValidationError("max_observations must be >= 1");
    }
    if (budget.init_random < 1 || budget.init_random > budget.max_observations) {
        throw ValidationError("init_random must lie in [1, max_observations]");
    }
}

std::unique_ptr<Surrogate> fit_surrogate(const SearchPolicy& policy,
                                         const std::vector<std::array<double, 2>>& points,
                                         const std::vector<double>& targets, std::uint64_t seed,
                                         int step, std::string& dump) {
    if (policy.surrogate == SurrogateKind::gp) {
        auto gp = std::make_unique<GpModel>(gp_fit(points, targets));
        dump = gp->dump_hyperparameters();
        return gp;
    }
    auto rf = std::make_unique<RfModel>(
        rf_fit(points, targets, derive_seed(seed, static_cast<std::uint64_t>(step))));
    dump = rf->dump_parameters();
    return rf;
}

} // namespace

SearchResult run_search(const SearchPolicy& policy, const ObservationBackend& backend,
                        const Budget& budget, std::uint64_t seed) {
    validate_budget(budget);
    const ConfigurationSpace& space = backend.space();
    const std::size_t space_size = space.size();
    const int observations =
        static_cast<int>(std::min<std::size_t>(budget.max_observations, space_size));

    Rng rng(seed);
    // The random policy and the smbo init phase share this stream: a
    // shuffled walk over the grid is sampling without replacement, and the
    // shared prefix makes the two policies identical up to init_random.
    std::vector<std::size_t> shuffled(space_size);
    std::iota(shuffled.begin(), shuffled.end(), std::size_t{0});
    rng.shuffle(shuffled);
    std::size_t random_cursor = 0;

    SearchResult result;
    SearchState& state = result.state;
    std::set<std::size_t> observed;
    std::set<std::size_t> infeasible;
    std::vector<std::array<double, 2>> train_points;
    std::vector<double> train_targets;

    for (int step = 0; step < observations; ++step) {
        CloudConfiguration config;
        switch (policy.kind) {
        case PolicyKind::random:
            config = space.at(shuffled[random_cursor++]);
            break;
        case PolicyKind::grid:
            config = space.at(static_cast<std::size_t>(step));
            break;
        case PolicyKind::smbo:
            // Fall back to the random stream until the model has data.
            if (step < budget.init_random || train_points.empty()) {
                config = space.at(shuffled[random_cursor++]);
            } else {
                const auto surrogate = fit_surrogate(policy, train_points, train_targets, seed,
                                                     step, result.model_dump);
                const double best_log = std::log(state.best_so_far->objective_cost_usd);
                config = select_next(*surrogate, space, policy.acquisition, observed, infeasible,
                                     best_log, rng);
            }
            break;
        }

        const Observation obs = backend.observe(config, budget.mode);
        observed.insert(space.flat_index(config));
        state.history.push_back(obs);
        state.accumulated_charge_usd += obs.charged_cost_usd;

        if (obs.feasible) {
            if (!state.best_so_far ||
                obs.objective_cost_usd < state.best_so_far->objective_cost_usd) {
                state.best_so_far = obs;
            }
            train_points.push_back(normalize_coordinates(space, config));
            train_targets.push_back(std::log(obs.objective_cost_usd));
        } else {
            infeasible.insert(space.flat_index(config));
        }

        result.best_cost_curve.push_back(state.best_so_far
                                             ? state.best_so_far->objective_cost_usd
                                             : std::numeric_limits<double>::quiet_NaN());
        result.accumulated_charge_curve.push_back(state.accumulated_charge_usd);
    }

    if (!state.best_so_far) {
        throw NoSolutionError("search observed no feasible configuration",
                              state.accumulated_charge_usd);
    }
    result.recommendation = state.best_so_far->config;
    return result;
}

} // namespace cloudsearch
