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

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cloudsearch {

/// One rentable machine type: resources and hourly price.
struct VmType {
    std::string name;
    int vcpus = 0;
    double mem_gib = 0.0;
    double network_gbps = 0.0;
    double price_usd_hour = 0.0;
};

/// A point in the search space: VM type (index into the ordered catalog)
/// and cluster size n.
struct CloudConfiguration {
    int vm_index = 0;
    int n = 1;

    friend bool operator==(const CloudConfiguration&, const CloudConfiguration&) = default;
};

/// The finite 2-D grid of configurations: ordered VM axis x size axis.
/// Immutable after construction and safe to share across threads.
class ConfigurationSpace {
public:
    /// `vms` must already be ordered (see order_vm_axis); `sizes` must be
    /// strictly increasing positive counts.
    ConfigurationSpace(std::vector<VmType> vms, std::vector<int> sizes);

    const std::vector<VmType>& vms() const { return vms_; }
    const std::vector<int>& sizes() const { return sizes_; }

    std::size_t size() const { return vms_.size() * sizes_.size(); }

    /// VM-major enumeration: flat index i * |sizes| + j <-> coordinate (i, j).
    CloudConfiguration at(std::size_t flat_index) const;
    std::size_t flat_index(const CloudConfiguration& config) const;

    /// Grid coordinate (VM axis position, size axis position).
    std::array<int, 2> coordinate(const CloudConfiguration& config) const;

    const VmType& vm(const CloudConfiguration& config) const;

    /// True when the configuration addresses a grid cell.
    bool contains(const CloudConfiguration& config) const;

private:
    std::vector<VmType> vms_;
    std::vector<int> sizes_;
};

/// The paper-default size axis {1, 2, 4, 8, 16, 32}.
std::vector<int> default_size_axis();

/// Parses catalog CSV text (header name,vcpus,mem_gib,network_gbps,price_usd_hour).
/// Row order is preserved; duplicate names are rejected.
std::vector<VmType> load_catalog(std::string_view content);
std::vector<VmType> load_catalog_file(const std::filesystem::path& path);

/// Stable sort by price ascending, then memory ascending, then name, the
/// axis ordering that smooths the search space. Idempotent.
std::vector<VmType> order_vm_axis(std::vector<VmType> vms);

/// Cartesian product of the two axes.
ConfigurationSpace enumerate_space(std::vector<VmType> ordered_vms, std::vector<int> sizes);

/// Maps a grid coordinate to [0,1]^2: (i/(|vms|-1), j/(|sizes|-1)); an axis
/// of length 1 maps to 0. Throws std::out_of_range for configs outside the grid.
std::array<double, 2> normalize_coordinates(const ConfigurationSpace& space,
                                            const CloudConfiguration& config);

} // namespace cloudsearch
