#include "snncost/deployment.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace snncost {

int SnnDescription::total_neurons() const {
    int total = 0;
    for (const auto& p : populations) total += p.size;
    return total;
}

std::vector<Slice> partition_fixed_size(const SnnDescription& snn, int k) {
    if (k < 1) throw std::invalid_argument("fixed size k must be >= 1, got " + std::to_string(k));
    std::vector<Slice> slices;
    int base = 0;
    for (std::size_t p = 0; p < snn.populations.size(); ++p) {
        const int count = snn.populations[p].size;
        for (int first = 0; first < count; first += k) {
            slices.push_back(Slice{static_cast<int>(p), base + first,
                                   base + std::min(first + k, count)});
        }
        base += count;
    }
    return slices;
}

std::vector<int> enumerate_fixed_sizes(const SnnDescription& snn) {
    int max_pop = 0;
    for (const auto& p : snn.populations) max_pop = std::max(max_pop, p.size);
    std::vector<int> ks(static_cast<std::size_t>(max_pop));
    for (int k = 1; k <= max_pop; ++k) ks[static_cast<std::size_t>(k - 1)] = k;
    return ks;
}

DeploymentConfiguration map_sequential(const std::vector<Slice>& slices,
                                       const MachineDescription& machine) {
    const int needed = static_cast<int>(slices.size());
    if (needed > machine.total_cores()) {
        throw std::invalid_argument("insufficient cores: need " + std::to_string(needed) +
                                    ", machine has " + std::to_string(machine.total_cores()));
    }
    int total = 0;
    for (std::size_t m = 0; m < slices.size(); ++m) {
        if (slices[m].size() > machine.core_capacity) {
            throw std::invalid_argument("slice " + std::to_string(m) + " holds " +
                                        std::to_string(slices[m].size()) +
                                        " neurons, exceeding core capacity " +
                                        std::to_string(machine.core_capacity));
        }
        total = std::max(total, slices[m].last);
    }

    DeploymentConfiguration config;
    config.slices_ = slices;
    config.cores_per_chip_ = machine.cores_per_chip;
    config.neuron_slice_.assign(static_cast<std::size_t>(total), -1);
    for (std::size_t m = 0; m < slices.size(); ++m) {
        for (int id = slices[m].first; id < slices[m].last; ++id) {
            config.neuron_slice_[static_cast<std::size_t>(id)] = static_cast<int>(m);
        }
    }

    Occupancy& occ = config.occupancy_;
    const int chips_touched =
        slices.empty() ? 0 : static_cast<int>((slices.size() - 1) / machine.cores_per_chip) + 1;
    occ.neurons_per_core.assign(static_cast<std::size_t>(chips_touched) * machine.cores_per_chip, 0);
    occ.cores_in_use_per_chip.assign(static_cast<std::size_t>(chips_touched), 0);
    for (std::size_t m = 0; m < slices.size(); ++m) {
        occ.neurons_per_core[m] = slices[m].size();
        occ.cores_in_use_per_chip[m / machine.cores_per_chip] += 1;
        occ.total_neurons += slices[m].size();
    }
    for (int c : occ.cores_in_use_per_chip) {
        if (c > 0) occ.chips_in_use += 1;
    }
    return config;
}

std::pair<int, int> DeploymentConfiguration::core_of_slice(std::size_t m) const {
    if (m >= slices_.size()) throw std::out_of_range("slice index out of range");
    const int idx = static_cast<int>(m);
    return {idx / cores_per_chip_, idx % cores_per_chip_};
}

int DeploymentConfiguration::slice_of_neuron(int neuron) const {
    if (neuron < 0 || static_cast<std::size_t>(neuron) >= neuron_slice_.size() ||
        neuron_slice_[static_cast<std::size_t>(neuron)] < 0) {
        throw std::out_of_range("neuron " + std::to_string(neuron) + " is not assigned");
    }
    return neuron_slice_[static_cast<std::size_t>(neuron)];
}

std::pair<int, int> DeploymentConfiguration::loc_core(int neuron) const {
    return core_of_slice(static_cast<std::size_t>(slice_of_neuron(neuron)));
}

int DeploymentConfiguration::loc_chip(int neuron) const {
    return loc_core(neuron).first;
}

int DeploymentConfiguration::neurons_on_core_of(int neuron) const {
    return slices_[static_cast<std::size_t>(slice_of_neuron(neuron))].size();
}

int DeploymentConfiguration::cores_in_use_on_chip(int chip) const {
    if (chip < 0 || static_cast<std::size_t>(chip) >= occupancy_.cores_in_use_per_chip.size()) {
        return 0;
    }
    return occupancy_.cores_in_use_per_chip[static_cast<std::size_t>(chip)];
}

} // namespace snncost
