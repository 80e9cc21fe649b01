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

#include "cloudsearch/json_io.hpp"

#include "cloudsearch/csv.hpp"
#include "cloudsearch/errors.hpp"

#include <sstream>

namespace cloudsearch {

namespace {

Json policy_to_json(const SearchPolicy& policy) {
    Json json;
    json["kind"] = to_string(policy.kind);
    if (policy.kind == PolicyKind::smbo) {
        json["surrogate"] = to_string(policy.surrogate);
        json["acquisition"] = to_string(policy.acquisition.kind);
        json["xi"] = policy.acquisition.xi;
        json["kappa"] = policy.acquisition.kappa;
    }
    return json;
}

SearchPolicy policy_from_json(const Json& json) {
    SearchPolicy policy;
    policy.kind = policy_kind_from_string(json.at("kind").get<std::string>());
    if (policy.kind == PolicyKind::smbo) {
        policy.surrogate = surrogate_kind_from_string(json.at("surrogate").get<std::string>());
        policy.acquisition.kind =
            acquisition_kind_from_string(json.at("acquisition").get<std::string>());
        policy.acquisition.xi = json.value("xi", 0.0);
        policy.acquisition.kappa = json.value("kappa", 2.0);
    }
    return policy;
}

Json budget_to_json(const Budget& budget) {
    Json json;
    json["max_observations"] = budget.max_observations;
    json["init_random"] = budget.init_random;
    json["mode"] = to_string(budget.mode);
    return json;
}

Budget budget_from_json(const Json& json) {
    Budget budget;
    budget.max_observations = json.value("max_observations", 32);
    budget.init_random = json.value("init_random", 8);
    budget.mode = observation_mode_from_string(json.value("mode", std::string("full")));
    return budget;
}

Json front_point_to_json(const FrontPoint& point, const std::string& vm_name) {
    Json json;
    json["vm"] = vm_name;
    json["vm_index"] = point.config.vm_index;
    json["n"] = point.config.n;
    json["runtime_s"] = point.runtime_s;
    json["cost_usd"] = point.cost_usd;
    json["frequency"] = point.selection_frequency;
    return json;
}

} // namespace

Json search_result_to_json(const SearchResult& result, const SearchRunInfo& info,
                           const ConfigurationSpace& space) {
    Json json;
    json["schema_version"] = kSchemaVersion;
    json["policy"] = policy_to_json(info.policy);
    json["budget"] = budget_to_json(info.budget);
    json["seed"] = info.seed;
    json["backend"] = info.backend_spec;
    if (!info.workload.empty()) {
        json["workload"] = info.workload;
    }

    Json history = Json::array();
    for (const Observation& obs : result.state.history) {
        Json entry;
        entry["vm"] = space.vm(obs.config).name;
        entry["vm_index"] = obs.config.vm_index;
        entry["n"] = obs.config.n;
        entry["mode"] = to_string(obs.mode);
        entry["feasible"] = obs.feasible;
        entry["runtime_estimate_s"] = obs.runtime_estimate_s;
        entry["charged_cost_usd"] = obs.charged_cost_usd;
        entry["objective_cost_usd"] = obs.objective_cost_usd;
        history.push_back(std::move(entry));
    }
    json["history"] = std::move(history);

    json["best_cost_curve"] = result.best_cost_curve;
    json["accumulated_charge_curve"] = result.accumulated_charge_curve;
    json["accumulated_charge_usd"] = result.state.accumulated_charge_usd;

    const Observation& best = *result.state.best_so_far;
    Json recommendation;
    recommendation["vm"] = space.vm(best.config).name;
    recommendation["vm_index"] = best.config.vm_index;
    recommendation["n"] = best.config.n;
    recommendation["runtime_estimate_s"] = best.runtime_estimate_s;
    recommendation["objective_cost_usd"] = best.objective_cost_usd;
    json["recommendation"] = std::move(recommendation);
    return json;
}

ParsedSearchResult parse_search_result(const Json& json) {
    ParsedSearchResult parsed;
    const ObservationMode default_mode =
        observation_mode_from_string(json.at("budget").value("mode", std::string("full")));
    for (const Json& entry : json.at("history")) {
        Observation obs;
        obs.config.vm_index = entry.at("vm_index").get<int>();
        obs.config.n = entry.at("n").get<int>();
        obs.mode = entry.contains("mode")
                       ? observation_mode_from_string(entry.at("mode").get<std::string>())
                       : default_mode;
        obs.feasible = entry.at("feasible").get<bool>();
        obs.runtime_estimate_s = entry.at("runtime_estimate_s").get<double>();
        obs.charged_cost_usd = entry.at("charged_cost_usd").get<double>();
        obs.objective_cost_usd = entry.at("objective_cost_usd").get<double>();
        parsed.history.push_back(obs);
        parsed.vm_names[obs.config.vm_index] = entry.at("vm").get<std::string>();
    }
    return parsed;
}

Json experiment_spec_to_json(const ExperimentSpec& spec) {
    Json json;
    json["schema_version"] = kSchemaVersion;
    json["catalog"] = spec.catalog_path.string();
    json["sizes"] = spec.sizes;
    json["backend"] = spec.backend_spec;
    if (!spec.workload.empty()) {
        json["workload"] = spec.workload;
    }
    json["budget"] = budget_to_json(spec.budget);
    json["repetitions"] = spec.repetitions;
    json["base_seed"] = spec.base_seed;
    json["failure_detect_s"] = spec.failure_detect_s;
    Json strategies = Json::array();
    for (const StrategySpec& s : spec.strategies) {
        Json entry = policy_to_json(s.policy);
        entry["name"] = s.name;
        strategies.push_back(std::move(entry));
    }
    json["strategies"] = std::move(strategies);
    return json;
}

ExperimentSpec experiment_spec_from_json(const Json& json) {
    ExperimentSpec spec;
    spec.catalog_path = json.at("catalog").get<std::string>();
    if (json.contains("sizes")) {
        spec.sizes = json.at("sizes").get<std::vector<int>>();
    }
    spec.backend_spec = json.at("backend").get<std::string>();
    spec.workload = json.value("workload", std::string());
    if (json.contains("budget")) {
        spec.budget = budget_from_json(json.at("budget"));
    }
    spec.repetitions = json.value("repetitions", 50);
    spec.base_seed = json.value("base_seed", std::uint64_t{0});
    spec.failure_detect_s = json.value("failure_detect_s", 120.0);
    spec.threads = json.value("threads", 0);
    if (!json.contains("strategies")) {
        throw ValidationError("experiment spec has no strategies");
    }
    for (const Json& entry : json.at("strategies")) {
        StrategySpec s;
        s.name = entry.at("name").get<std::string>();
        s.policy = policy_from_json(entry);
        spec.strategies.push_back(std::move(s));
    }
    return spec;
}

Json experiment_report_to_json(const ExperimentReport& report) {
    Json json;
    json["schema_version"] = kSchemaVersion;
    json["spec"] = experiment_spec_to_json(report.spec);

    Json optimum;
    optimum["available"] = report.optimum_available;
    if (report.optimum_available) {
        optimum["vm"] = report.optimum_vm_name;
        optimum["vm_index"] = report.optimum_config.vm_index;
        optimum["n"] = report.optimum_config.n;
        optimum["objective_cost_usd"] = report.optimum_cost_usd;
    }
    json["optimum"] = std::move(optimum);

    Json strategies = Json::array();
    for (const StrategyReport& s : report.strategies) {
        Json entry;
        entry["name"] = s.name;
        entry["policy"] = policy_to_json(s.policy);
        entry["geomean_best_curve"] = s.geomean_best_curve;
        entry["geomean_charge_full_curve"] = s.geomean_charge_full_curve;
        entry["geomean_charge_pi_curve"] = s.geomean_charge_pi_curve;
        entry["final_best_per_rep"] = s.final_best_per_rep;
        entry["geomean_final_best"] = s.geomean_final_best;
        if (!s.normalized_to_random_curve.empty()) {
            entry["normalized_to_random_curve"] = s.normalized_to_random_curve;
            entry["improvement_factor_vs_random"] = s.improvement_factor_vs_random;
        }
        entry["gap_to_optimum"] = s.gap_to_optimum;
        Json pareto;
        pareto["recommendation_count"] = s.recommendations.size();
        pareto["front_area"] = s.recommendation_front_area;
        Json recommendations = Json::array();
        for (std::size_t i = 0; i < s.recommendations.size(); ++i) {
            const std::string& vm_name =
                i < s.recommendation_vm_names.size() ? s.recommendation_vm_names[i] : std::string();
            recommendations.push_back(front_point_to_json(s.recommendations[i], vm_name));
        }
        pareto["recommendations"] = std::move(recommendations);
        entry["pareto"] = std::move(pareto);
        strategies.push_back(std::move(entry));
    }
    json["strategies"] = std::move(strategies);
    return json;
}

std::string report_curves_to_csv(const Json& report_json) {
    std::ostringstream out;
    out << "step,strategy,geomean_best,geomean_charge_full,geomean_charge_pi\n";
    const auto cell = [](const Json& value) {
        return value.is_null() ? std::string() : format_double(value.get<double>());
    };
    for (const Json& strategy : report_json.at("strategies")) {
        const std::string name = strategy.at("name").get<std::string>();
        const Json& best = strategy.at("geomean_best_curve");
        const Json& full = strategy.at("geomean_charge_full_curve");
        const Json& pi = strategy.at("geomean_charge_pi_curve");
        for (std::size_t step = 0; step < best.size(); ++step) {
            out << step + 1 << "," << name << "," << cell(best[step]) << "," << cell(full[step])
                << "," << cell(pi[step]) << "\n";
        }
    }
    return out.str();
}

} // namespace cloudsearch
