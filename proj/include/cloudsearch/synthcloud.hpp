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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cloudsearch {

/// Parameters of the synthetic execution model: Amdahl scaling plus a
/// per-extra-node communication penalty, a memory-feasibility floor and
/// multiplicative lognormal noise.
struct AmdahlModel {
    double t1_s = 0.0;            // single-core runtime
    double serial_fraction = 0.0; // s in [0,1]
    double comm_coeff_s = 0.0;    // per-extra-node overhead coefficient
    double mem_req_gib = 0.0;     // total memory demand across the cluster
    double noise_sigma = 0.05;    // lognormal sigma of the runtime noise
    std::uint64_t seed = 0;

    // Paramount-iteration view of the synthetic workload: what share of a
    // full run the four recorded iterations consume, and how many
    // iterations a full run executes.
    std::string workload = "synth";
    double pi_fraction = 0.14;
    long long total_iterations = 100;
};

void validate(const AmdahlModel& model);

/// Parses a key=value model file ('#' comments allowed). Unknown keys are
/// rejected; missing keys keep their defaults, except t1_s which is required.
AmdahlModel load_model(std::string_view content);
AmdahlModel load_model_file(const std::filesystem::path& path);
std::string model_to_text(const AmdahlModel& model);

struct SynthPoint {
    double runtime_s = 0.0;
    bool feasible = false;
};

/// Noise-free runtime: t1 * (s + (1-s)/(vcpus*n)) + comm * (n-1)/network.
double amdahl_runtime(const AmdahlModel& model, const VmType& vm, int n);

/// One configuration with an explicit standard-normal draw z; runtime is
/// multiplied by exp(noise_sigma * z). Infeasible when mem_gib*n < mem_req_gib.
SynthPoint synth_runtime(const AmdahlModel& model, const VmType& vm, int n, double noise_z);

/// The whole grid. One normal draw is consumed per cell in flat-index order
/// from the model seed, so a seed pins every runtime bit-for-bit.
std::vector<SynthPoint> synth_space(const AmdahlModel& model, const ConfigurationSpace& space);

} // namespace cloudsearch
