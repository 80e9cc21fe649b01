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

#include "cloudsearch/backend.hpp"

#include "cloudsearch/errors.hpp"

#include <cmath>
#include <sstream>

namespace cloudsearch {

ObservationBackend::ObservationBackend(ConfigurationSpace space, double failure_detect_s)
    : space_(std::move(space)), failure_detect_s_(failure_detect_s) {
    if (failure_detect_s_ < 0.0) {
        throw ValidationError("failure_detect_s must be >= 0");
    }
}

Observation ObservationBackend::infeasible_observation(const CloudConfiguration& config,
                                                       ObservationMode mode) const {
    Observation obs;
    obs.config = config;
    obs.mode = mode;
    obs.feasible = false;
    obs.runtime_estimate_s = 0.0;
    obs.objective_cost_usd = 0.0;
    obs.charged_cost_usd =
        failure_detect_s_ > 0.0 ? config_cost(failure_detect_s_, space().vm(config).price_usd_hour,
                                              config.n)
                                : 0.0;
    return obs;
}

TraceBackend::TraceBackend(ConfigurationSpace space, Trace trace, std::string workload,
                           double failure_detect_s)
    : ObservationBackend(std::move(space), failure_detect_s), trace_(std::move(trace)),
      workload_(std::move(workload)) {
    if (workload_.empty()) {
        const std::vector<std::string> available = trace_.workloads();
        if (available.size() == 1) {
            workload_ = available.front();
        } else {
            throw ValidationError("trace holds multiple workloads; one must be selected");
        }
    }
}

Observation TraceBackend::observe(const CloudConfiguration& config, ObservationMode mode) const {
    if (!space().contains(config)) {
        throw std::out_of_range("configuration outside the search space");
    }
    const VmType& vm = space().vm(config);
    const TraceRow& row = trace_.at(workload_, vm.name, config.n);
    if (!row.feasible) {
        return infeasible_observation(config, mode);
    }

    Observation obs;
    obs.config = config;
    obs.mode = mode;
    obs.feasible = true;
    if (mode == ObservationMode::full) {
        if (!row.total_runtime_s) {
            std::ostringstream msg;
            msg << "trace row (" << workload_ << ", " << vm.name << ", " << config.n
                << ") has no full runtime; full-mode observation unavailable";
            throw ModeUnavailableError(msg.str());
        }
        obs.runtime_estimate_s = *row.total_runtime_s;
        obs.objective_cost_usd = config_cost(obs.runtime_estimate_s, vm.price_usd_hour, config.n);
        obs.charged_cost_usd = obs.objective_cost_usd;
    } else {
        const PiMeasurement pi{row.pi_times_s, row.total_iterations};
        obs.runtime_estimate_s = pi_runtime_estimate(pi);
        obs.objective_cost_usd = config_cost(obs.runtime_estimate_s, vm.price_usd_hour, config.n);
        obs.charged_cost_usd = pi_charge(pi, vm.price_usd_hour, config.n);
    }
    return obs;
}

bool TraceBackend::supports_mode(ObservationMode mode) const {
    for (const TraceRow& row : trace_.rows()) {
        if (row.workload != workload_ || !row.feasible) {
            continue;
        }
        if (mode == ObservationMode::full && !row.total_runtime_s) {
            return false;
        }
        if (mode == ObservationMode::pi && row.pi_times_s.empty()) {
            return false;
        }
    }
    return true;
}

SynthBackend::SynthBackend(ConfigurationSpace space, AmdahlModel model, double failure_detect_s)
    : ObservationBackend(std::move(space), failure_detect_s), model_(std::move(model)),
      points_(synth_space(model_, this->space())) {}

Observation SynthBackend::observe(const CloudConfiguration& config, ObservationMode mode) const {
    if (!space().contains(config)) {
        throw std::out_of_range("configuration outside the search space");
    }
    const SynthPoint& point = points_[space().flat_index(config)];
    if (!point.feasible) {
        return infeasible_observation(config, mode);
    }

    const VmType& vm = space().vm(config);
    Observation obs;
    obs.config = config;
    obs.mode = mode;
    obs.feasible = true;
    obs.runtime_estimate_s = point.runtime_s;
    obs.objective_cost_usd = config_cost(point.runtime_s, vm.price_usd_hour, config.n);
    // The model has no per-iteration timings; an early stop bills the
    // pi_fraction share of the full run.
    obs.charged_cost_usd = mode == ObservationMode::full
                               ? obs.objective_cost_usd
                               : obs.objective_cost_usd * model_.pi_fraction;
    return obs;
}

std::vector<TraceRow> SynthBackend::to_trace_rows() const {
    std::vector<TraceRow> rows;
    rows.reserve(space().size());
    for (std::size_t index = 0; index < space().size(); ++index) {
        const CloudConfiguration config = space().at(index);
        const SynthPoint& point = points_[index];
        TraceRow row;
        row.workload = model_.workload;
        row.vm_name = space().vm(config).name;
        row.n = config.n;
        row.feasible = point.feasible;
        if (point.feasible) {
            const double slice = model_.pi_fraction * point.runtime_s / 4.0;
            row.pi_times_s.assign(4, slice);
            row.total_iterations = model_.total_iterations;
            row.total_runtime_s = point.runtime_s;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::optional<std::pair<CloudConfiguration, double>> scan_optimum(const ObservationBackend& backend,
                                                                  ObservationMode mode) {
    std::optional<std::pair<CloudConfiguration, double>> best;
    for (std::size_t index = 0; index < backend.space().size(); ++index) {
        const CloudConfiguration config = backend.space().at(index);
        const Observation obs = backend.observe(config, mode);
        if (!obs.feasible) {
            continue;
        }
        if (!best || obs.objective_cost_usd < best->second) {
            best = {config, obs.objective_cost_usd};
        }
    }
    return best;
}

std::unique_ptr<ObservationBackend> make_backend(const std::string& backend_spec,
                                                 const ConfigurationSpace& space,
                                                 const std::string& workload,
                                                 double failure_detect_s) {
    const std::size_t colon = backend_spec.find(':');
    if (colon == std::string::npos) {
        throw ValidationError("backend spec must look like synth:FILE or trace:FILE, got '" +
                              backend_spec + "'");
    }
    const std::string kind = backend_spec.substr(0, colon);
    const std::string path = backend_spec.substr(colon + 1);
    if (kind == "synth") {
        return std::make_unique<SynthBackend>(space, load_model_file(path), failure_detect_s);
    }
    if (kind == "trace") {
        return std::make_unique<TraceBackend>(space, Trace::load_file(path), workload,
                                              failure_detect_s);
    }
    throw ValidationError("unknown backend kind '" + kind + "' (expected synth or trace)");
}

} // namespace cloudsearch
