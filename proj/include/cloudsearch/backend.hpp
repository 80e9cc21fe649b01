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
#include "cloudsearch/synthcloud.hpp"
#include "cloudsearch/trace.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>

namespace cloudsearch {

/// Answers observe(config, mode) with runtime estimate, charge and
/// feasibility. Observations are pure: the same (config, mode) always
/// returns the same Observation, so concurrent calls are safe.
class ObservationBackend {
public:
    virtual ~ObservationBackend() = default;

    const ConfigurationSpace& space() const { return space_; }
    double failure_detect_s() const { return failure_detect_s_; }

    virtual Observation observe(const CloudConfiguration& config, ObservationMode mode) const = 0;

    /// True when every feasible configuration can answer in `mode`.
    virtual bool supports_mode(ObservationMode mode) const = 0;

protected:
    ObservationBackend(ConfigurationSpace space, double failure_detect_s);

    /// Infeasible configurations still bill the spin-up-and-crash window.
    Observation infeasible_observation(const CloudConfiguration& config,
                                       ObservationMode mode) const;

private:
    ConfigurationSpace space_;
    double failure_detect_s_;
};

/// Replays recorded measurements for one workload.
class TraceBackend final : public ObservationBackend {
public:
    TraceBackend(ConfigurationSpace space, Trace trace, std::string workload,
                 double failure_detect_s = 120.0);

    Observation observe(const CloudConfiguration& config, ObservationMode mode) const override;
    bool supports_mode(ObservationMode mode) const override;

    const std::string& workload() const { return workload_; }
    const Trace& trace() const { return trace_; }

private:
    Trace trace_;
    std::string workload_;
};

/// Serves a seeded synthetic cost space. All runtimes (noise included) are
/// drawn once at construction, so repeated observations agree.
class SynthBackend final : public ObservationBackend {
public:
    SynthBackend(ConfigurationSpace space, AmdahlModel model, double failure_detect_s = 120.0);

    Observation observe(const CloudConfiguration& config, ObservationMode mode) const override;
    bool supports_mode(ObservationMode) const override { return true; }

    const AmdahlModel& model() const { return model_; }
    const std::vector<SynthPoint>& points() const { return points_; }

    /// The generated space as trace rows (the four PI times of a feasible
    /// row are equal slices of pi_fraction * runtime).
    std::vector<TraceRow> to_trace_rows() const;

private:
    AmdahlModel model_;
    std::vector<SynthPoint> points_;
};

/// Full scan of the backend: the cheapest feasible configuration and its
/// objective cost, or nullopt when nothing is feasible.
std::optional<std::pair<CloudConfiguration, double>> scan_optimum(const ObservationBackend& backend,
                                                                  ObservationMode mode);

/// "synth:FILE" or "trace:FILE" -> backend. Trace backends take the
/// workload id; when empty, a single-workload trace selects it implicitly.
std::unique_ptr<ObservationBackend> make_backend(const std::string& backend_spec,
                                                 const ConfigurationSpace& space,
                                                 const std::string& workload,
                                                 double failure_detect_s);

} // namespace cloudsearch
