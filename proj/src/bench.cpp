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

#include "cloudsearch/bench.hpp"

#include "cloudsearch/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

namespace cloudsearch {

double geometric_mean(const std::vector<double>& values) {
    if (values.empty()) {
        throw ValidationError("geometric mean of an empty set");
    }
    double log_sum = 0.0;
    for (double v : values) {
        if (!(v > 0.0)) {
            throw ValidationError("geometric mean requires strictly positive values");
        }
        log_sum += std::log(v);
    }
    return std::exp(log_sum / static_cast<double>(values.size()));
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Geometric mean that propagates NaN (steps before the first feasible
/// observation) instead of throwing.
double geomean_or_nan(const std::vector<double>& values) {
    for (double v : values) {
        if (!(v > 0.0)) {
            return kNaN;
        }
    }
    return geometric_mean(values);
}

void validate_spec(const ExperimentSpec& spec) {
    if (spec.repetitions < 1) {
        throw ValidationError("repetitions must be >= 1");
    }
    if (spec.strategies.empty()) {
        throw ValidationError("experiment needs at least one strategy");
    }
    for (const StrategySpec& s : spec.strategies) {
        if (s.name.empty()) {
            throw ValidationError("strategy names must be non-empty");
        }
    }
}

/// Accumulated charge per step if every feasible observation of this
/// trajectory were billed in `mode`. Failure charges are mode-independent.
std::vector<double> replay_charges(const std::vector<Observation>& history,
                                   const ObservationBackend& backend, ObservationMode mode) {
    std::vector<double> curve;
    curve.reserve(history.size());
    double total = 0.0;
    for (const Observation& obs : history) {
        total += obs.feasible ? backend.observe(obs.config, mode).charged_cost_usd
                              : obs.charged_cost_usd;
        curve.push_back(total);
    }
    return curve;
}

} // namespace

double gap_to_optimum(const StrategyReport& strategy, double optimum_cost_usd) {
    return (strategy.geomean_final_best - optimum_cost_usd) / optimum_cost_usd;
}

void normalize_to_random(ExperimentReport& report) {
    const StrategyReport* baseline = nullptr;
    for (const StrategyReport& s : report.strategies) {
        if (s.policy.kind == PolicyKind::random) {
            baseline = &s;
            break;
        }
    }
    if (baseline == nullptr) {
        throw ValidationError("report has no random baseline to normalize against");
    }
    const std::vector<double> random_curve = baseline->geomean_best_curve;
    const double random_final = baseline->geomean_final_best;
    for (StrategyReport& s : report.strategies) {
        s.normalized_to_random_curve.clear();
        s.normalized_to_random_curve.reserve(s.geomean_best_curve.size());
        for (std::size_t step = 0; step < s.geomean_best_curve.size(); ++step) {
            s.normalized_to_random_curve.push_back(s.geomean_best_curve[step] /
                                                   random_curve[step]);
        }
        s.improvement_factor_vs_random = random_final / s.geomean_final_best;
    }
}

ExperimentReport run_experiment(const ExperimentSpec& spec, const ObservationBackend& backend) {
    validate_spec(spec);
    const int reps = spec.repetitions;
    const int strategy_count = static_cast<int>(spec.strategies.size());

    // All (strategy, repetition) runs are independent; repetition r of every
    // strategy shares seed base_seed + r so strategies are compared on
    // paired random initializations.
    std::vector<std::vector<SearchResult>> results(
        static_cast<std::size_t>(strategy_count));
    for (auto& slot : results) {
        slot.resize(static_cast<std::size_t>(reps));
    }

    const int total_jobs = strategy_count * reps;
    std::atomic<int> next_job{0};
    std::atomic<bool> failed{false};
    std::string failure_message;
    std::mutex failure_mutex;

    const auto worker = [&]() {
        while (true) {
            const int job = next_job.fetch_add(1);
            if (job >= total_jobs || failed.load()) {
                return;
            }
            const int strategy_index = job / reps;
            const int rep = job % reps;
            try {
                results[static_cast<std::size_t>(strategy_index)][static_cast<std::size_t>(rep)] =
                    run_search(spec.strategies[static_cast<std::size_t>(strategy_index)].policy,
                               backend, spec.budget,
                               spec.base_seed + static_cast<std::uint64_t>(rep));
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                failed.store(true);
                if (failure_message.empty()) {
                    failure_message = e.what();
                }
            }
        }
    };

    unsigned int thread_count = spec.threads > 0
                                    ? static_cast<unsigned int>(spec.threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
    thread_count = std::min<unsigned int>(thread_count, static_cast<unsigned int>(total_jobs));
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (unsigned int t = 0; t < thread_count; ++t) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }
    if (failed.load()) {
        throw ValidationError("experiment run failed: " + failure_message);
    }

    ExperimentReport report;
    report.spec = spec;
    if (const auto optimum = scan_optimum(backend, spec.budget.mode)) {
        report.optimum_available = true;
        report.optimum_config = optimum->first;
        report.optimum_vm_name = backend.space().vm(optimum->first).name;
        report.optimum_cost_usd = optimum->second;
    } else {
        report.optimum_cost_usd = kNaN;
    }

    const std::size_t steps = results.front().front().best_cost_curve.size();
    for (int s = 0; s < strategy_count; ++s) {
        const std::vector<SearchResult>& runs = results[static_cast<std::size_t>(s)];
        StrategyReport strategy;
        strategy.name = spec.strategies[static_cast<std::size_t>(s)].name;
        strategy.policy = spec.strategies[static_cast<std::size_t>(s)].policy;

        std::vector<std::vector<double>> charge_full;
        std::vector<std::vector<double>> charge_pi;
        std::vector<std::vector<Observation>> histories;
        charge_full.reserve(runs.size());
        charge_pi.reserve(runs.size());
        histories.reserve(runs.size());
        for (const SearchResult& run : runs) {
            charge_full.push_back(
                replay_charges(run.state.history, backend, ObservationMode::full));
            charge_pi.push_back(replay_charges(run.state.history, backend, ObservationMode::pi));
            histories.push_back(run.state.history);
            strategy.final_best_per_rep.push_back(run.state.best_so_far->objective_cost_usd);
        }

        std::vector<double> column(runs.size());
        for (std::size_t step = 0; step < steps; ++step) {
            for (std::size_t r = 0; r < runs.size(); ++r) {
                column[r] = runs[r].best_cost_curve[step];
            }
            strategy.geomean_best_curve.push_back(geomean_or_nan(column));
            for (std::size_t r = 0; r < runs.size(); ++r) {
                column[r] = charge_full[r][step];
            }
            strategy.geomean_charge_full_curve.push_back(geomean_or_nan(column));
            for (std::size_t r = 0; r < runs.size(); ++r) {
                column[r] = charge_pi[r][step];
            }
            strategy.geomean_charge_pi_curve.push_back(geomean_or_nan(column));
        }
        strategy.geomean_final_best = geometric_mean(strategy.final_best_per_rep);
        strategy.gap_to_optimum = report.optimum_available
                                      ? gap_to_optimum(strategy, report.optimum_cost_usd)
                                      : kNaN;

        strategy.recommendations = recommend(histories);
        for (const FrontPoint& rec : strategy.recommendations) {
            strategy.recommendation_vm_names.push_back(backend.space().vm(rec.config).name);
        }
        // Area in the space normalized over everything this strategy observed.
        const std::vector<FrontPoint> union_points = observed_union(histories);
        const std::vector<std::array<double, 2>> normalized = normalize_objectives(union_points);
        std::vector<std::array<double, 2>> normalized_front;
        for (const FrontPoint& rec : strategy.recommendations) {
            for (std::size_t i = 0; i < union_points.size(); ++i) {
                if (union_points[i].config == rec.config) {
                    normalized_front.push_back(normalized[i]);
                    break;
                }
            }
        }
        strategy.recommendation_front_area = front_area(normalized_front);

        report.strategies.push_back(std::move(strategy));
    }

    const bool has_random =
        std::any_of(report.strategies.begin(), report.strategies.end(),
                    [](const StrategyReport& s) { return s.policy.kind == PolicyKind::random; });
    if (has_random) {
        normalize_to_random(report);
    }
    return report;
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
    validate_spec(spec);
    const ConfigurationSpace space =
        enumerate_space(order_vm_axis(load_catalog_file(spec.catalog_path)), spec.sizes);
    const std::unique_ptr<ObservationBackend> backend =
        make_backend(spec.backend_spec, space, spec.workload, spec.failure_detect_s);
    return run_experiment(spec, *backend);
}

} // namespace cloudsearch
