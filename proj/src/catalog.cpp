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

#include "cloudsearch/catalog.hpp"

#include "cloudsearch/csv.hpp"
#include "cloudsearch/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace cloudsearch {

namespace {

constexpr std::string_view kCatalogHeader = "name,vcpus,mem_gib,network_gbps,price_usd_hour";

void validate_vm(const VmType& vm, std::size_t line_number) {
    std::ostringstream msg;
    msg << "line " << line_number << ": ";
    if (vm.name.empty()) {
        throw ValidationError(msg.str() + "empty VM name");
    }
    if (vm.vcpus < 1) {
        throw ValidationError(msg.str() + "vcpus must be >= 1");
    }
    if (vm.mem_gib <= 0.0) {
        throw ValidationError(msg.str() + "mem_gib must be > 0");
    }
    if (vm.network_gbps <= 0.0) {
        throw ValidationError(msg.str() + "network_gbps must be > 0");
    }
    if (vm.price_usd_hour <= 0.0) {
        throw ValidationError(msg.str() + "price_usd_hour must be > 0");
    }
}

} // namespace

ConfigurationSpace::ConfigurationSpace(std::vector<VmType> vms, std::vector<int> sizes)
    : vms_(std::move(vms)), sizes_(std::move(sizes)) {
    if (vms_.empty()) {
        throw ValidationError("configuration space needs at least one VM type");
    }
    if (sizes_.empty()) {
        throw ValidationError("configuration space needs at least one cluster size");
    }
    int previous = 0;
    for (int n : sizes_) {
        if (n <= previous) {
            throw ValidationError("size axis must be strictly increasing positive integers");
        }
        previous = n;
    }
}

CloudConfiguration ConfigurationSpace::at(std::size_t flat_index) const {
    if (flat_index >= size()) {
        throw std::out_of_range("configuration index out of range");
    }
    const std::size_t i = flat_index / sizes_.size();
    const std::size_t j = flat_index % sizes_.size();
    return CloudConfiguration{static_cast<int>(i), sizes_[j]};
}

std::size_t ConfigurationSpace::flat_index(const CloudConfiguration& config) const {
    const std::array<int, 2> coord = coordinate(config);
    return static_cast<std::size_t>(coord[0]) * sizes_.size() + static_cast<std::size_t>(coord[1]);
}

std::array<int, 2> ConfigurationSpace::coordinate(const CloudConfiguration& config) const {
    if (config.vm_index < 0 || static_cast<std::size_t>(config.vm_index) >= vms_.size()) {
        throw std::out_of_range("VM index outside the catalog axis");
    }
    const auto it = std::find(sizes_.begin(), sizes_.end(), config.n);
    if (it == sizes_.end()) {
        throw std::out_of_range("cluster size not on the size axis");
    }
    return {config.vm_index, static_cast<int>(it - sizes_.begin())};
}

const VmType& ConfigurationSpace::vm(const CloudConfiguration& config) const {
    if (config.vm_index < 0 || static_cast<std::size_t>(config.vm_index) >= vms_.size()) {
        throw std::out_of_range("VM index outside the catalog axis");
    }
    return vms_[static_cast<std::size_t>(config.vm_index)];
}

bool ConfigurationSpace::contains(const CloudConfiguration& config) const {
    if (config.vm_index < 0 || static_cast<std::size_t>(config.vm_index) >= vms_.size()) {
        return false;
    }
    return std::find(sizes_.begin(), sizes_.end(), config.n) != sizes_.end();
}

std::vector<int> default_size_axis() {
    return {1, 2, 4, 8, 16, 32};
}

std::vector<VmType> load_catalog(std::string_view content) {
    const std::vector<CsvRecord> records = read_csv(content, kCatalogHeader);
    if (records.empty()) {
        throw ValidationError("catalog has no VM rows");
    }

    std::vector<VmType> vms;
    vms.reserve(records.size());
    std::set<std::string> seen;
    for (const CsvRecord& record : records) {
        VmType vm;
        vm.name = record.fields[0];
        vm.vcpus = static_cast<int>(parse_int_field(record, 1, "vcpus"));
        vm.mem_gib = parse_double_field(record, 2, "mem_gib");
        vm.network_gbps = parse_double_field(record, 3, "network_gbps");
        vm.price_usd_hour = parse_double_field(record, 4, "price_usd_hour");
        validate_vm(vm, record.line_number);
        if (!seen.insert(vm.name).second) {
            throw ValidationError("duplicate VM name: " + vm.name);
        }
        vms.push_back(std::move(vm));
    }
    return vms;
}

std::vector<VmType> load_catalog_file(const std::filesystem::path& path) {
    return load_catalog(read_text_file(path));
}

std::vector<VmType> order_vm_axis(std::vector<VmType> vms) {
    if (vms.empty()) {
        throw ValidationError("cannot order an empty VM list");
    }
    std::stable_sort(vms.begin(), vms.end(), [](const VmType& a, const VmType& b) {
        return std::tie(a.price_usd_hour, a.mem_gib, a.name) <
               std::tie(b.price_usd_hour, b.mem_gib, b.name);
    });
    return vms;
}

ConfigurationSpace enumerate_space(std::vector<VmType> ordered_vms, std::vector<int> sizes) {
    return ConfigurationSpace(std::move(ordered_vms), std::move(sizes));
}

std::array<double, 2> normalize_coordinates(const ConfigurationSpace& space,
                                            const CloudConfiguration& config) {
    const std::array<int, 2> coord = space.coordinate(config);
    const std::size_t vm_count = space.vms().size();
    const std::size_t size_count = space.sizes().size();
    const double x = vm_count > 1 ? static_cast<double>(coord[0]) / static_cast<double>(vm_count - 1)
                                  : 0.0;
    const double y = size_count > 1
                         ? static_cast<double>(coord[1]) / static_cast<double>(size_count - 1)
                         : 0.0;
    return {x, y};
}

} // namespace cloudsearch
