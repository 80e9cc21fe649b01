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

#include "cloudsearch/synthcloud.hpp"

#include "cloudsearch/csv.hpp"
#include "cloudsearch/errors.hpp"
#include "cloudsearch/rng.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace cloudsearch {

void validate(const AmdahlModel& model) {
    if (model.t1_s <= 0.0) {
        throw ValidationError("t1_s must be > 0");
    }
    if (model.serial_fraction < 0.0 || model.serial_fraction > 1.0) {
        throw ValidationError("serial_fraction must lie in [0, 1]");
    }
    if (model.comm_coeff_s < 0.0) {
        throw ValidationError("comm_coeff_s must be >= 0");
    }
    if (model.mem_req_gib < 0.0) {
        throw ValidationError("mem_req_gib must be >= 0");
    }
    if (model.noise_sigma < 0.0) {
        throw ValidationError("noise_sigma must be >= 0");
    }
    if (model.pi_fraction <= 0.0 || model.pi_fraction > 1.0) {
        throw ValidationError("pi_fraction must lie in (0, 1]");
    }
    if (model.total_iterations < 4) {
        throw ValidationError("total_iterations must be >= 4");
    }
    if (model.workload.empty()) {
        throw ValidationError("workload must be non-empty");
    }
}

AmdahlModel load_model(std::string_view content) {
    AmdahlModel model;
    bool saw_t1 = false;

    std::size_t line_number = 0;
    for (const std::string& raw_line : split(content, '\n')) {
        ++line_number;
        std::string line = trim(raw_line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "line " << line_number << ": expected key=value, got '" << line << "'";
            throw ParseError(msg.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto parse_number = [&](double& out) {
            const char* begin = value.data();
            const char* end = begin + value.size();
            const auto [ptr, ec] = std::from_chars(begin, end, out);
            if (ec != std::errc() || ptr != end) {
                std::ostringstream msg;
                msg << "line " << line_number << ": malformed number for " << key << ": '" << value
                    << "'";
                throw ParseError(msg.str());
            }
        };

        if (key == "t1_s") {
            parse_number(model.t1_s);
            saw_t1 = true;
        } else if (key == "serial_fraction") {
            parse_number(model.serial_fraction);
        } else if (key == "comm_coeff_s") {
            parse_number(model.comm_coeff_s);
        } else if (key == "mem_req_gib") {
            parse_number(model.mem_req_gib);
        } else if (key == "noise_sigma") {
            parse_number(model.noise_sigma);
        } else if (key == "seed") {
            double seed = 0.0;
            parse_number(seed);
            model.seed = static_cast<std::uint64_t>(seed);
        } else if (key == "workload") {
            model.workload = value;
        } else if (key == "pi_fraction") {
            parse_number(model.pi_fraction);
        } else if (key == "total_iterations") {
            double iterations = 0.0;
            parse_number(iterations);
            model.total_iterations = static_cast<long long>(iterations);
        } else {
            std::ostringstream msg;
            msg << "line " << line_number << ": unknown model key '" << key << "'";
            throw ParseError(msg.str());
        }
    }

    if (!saw_t1) {
        throw ValidationError("model file does not set t1_s");
    }
    validate(model);
    return model;
}

AmdahlModel load_model_file(const std::filesystem::path& path) {
    return load_model(read_text_file(path));
}

std::string model_to_text(const AmdahlModel& model) {
    std::ostringstream out;
    out << "t1_s=" << format_double(model.t1_s) << "\n";
    out << "serial_fraction=" << format_double(model.serial_fraction) << "\n";
    out << "comm_coeff_s=" << format_double(model.comm_coeff_s) << "\n";
    out << "mem_req_gib=" << format_double(model.mem_req_gib) << "\n";
    out << "noise_sigma=" << format_double(model.noise_sigma) << "\n";
    out << "seed=" << model.seed << "\n";
    out << "workload=" << model.workload << "\n";
    out << "pi_fraction=" << format_double(model.pi_fraction) << "\n";
    out << "total_iterations=" << model.total_iterations << "\n";
    return out.str();
}

double amdahl_runtime(const AmdahlModel& model, const VmType& vm, int n) {
    const double cores = static_cast<double>(vm.vcpus) * static_cast<double>(n);
    const double parallel = (1.0 - model.serial_fraction) / cores;
    const double compute = model.t1_s * (model.serial_fraction + parallel);
    const double comm = model.comm_coeff_s * static_cast<double>(n - 1) / vm.network_gbps;
    return compute + comm;
}

SynthPoint synth_runtime(const AmdahlModel& model, const VmType& vm, int n, double noise_z) {
    validate(model);
    if (n < 1) {
        throw ValidationError("instance count must be >= 1");
    }
    if (vm.mem_gib * static_cast<double>(n) < model.mem_req_gib) {
        return SynthPoint{0.0, false};
    }
    const double runtime = amdahl_runtime(model, vm, n) * std::exp(model.noise_sigma * noise_z);
    return SynthPoint{runtime, true};
}

std::vector<SynthPoint> synth_space(const AmdahlModel& model, const ConfigurationSpace& space) {
    validate(model);
    Rng rng(model.seed);
    std::vector<SynthPoint> points;
    points.reserve(space.size());
    for (std::size_t index = 0; index < space.size(); ++index) {
        // The draw is consumed even for infeasible cells, so runtimes do not
        // shift when mem_req_gib changes.
        const double z = rng.normal();
        const CloudConfiguration config = space.at(index);
        points.push_back(synth_runtime(model, space.vm(config), config.n, z));
    }
    return points;
}

} // namespace cloudsearch
