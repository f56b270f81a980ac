#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace snncost {

struct Population {
    std::string name;
    int size = 0;
};

// Network structure. Global neuron ids are contiguous, population-major,
// in declaration order.
struct SnnDescription {
    std::vector<Population> populations;
    double connection_probability = 0.02;

    int total_neurons() const;
};

struct MachineDescription {
    int chip_count = 1;
    int cores_per_chip = 18;
    int core_capacity = 256;

    int total_cores() const { return chip_count * cores_per_chip; }
};

// Contiguous range of global neuron ids [first, last) within one population.
struct Slice {
    int population = 0;
    int first = 0;
    int last = 0;

    int size() const { return last - first; }
};

// Every population split independently into contiguous slices of size k
// (last slice of each population may be smaller).
std::vector<Slice> partition_fixed_size(const SnnDescription& snn, int k);

// 1..max population size: the fixed sizes that generate distinct sweeps.
std::vector<int> enumerate_fixed_sizes(const SnnDescription& snn);

struct Occupancy {
    std::vector<int> neurons_per_core;     // indexed chip*cores_per_chip+core
    std::vector<int> cores_in_use_per_chip;
    int chips_in_use = 0;
    int total_neurons = 0;
};

// Slices mapped to cores in order: slice m -> chip m/cores_per_chip,
// core m%cores_per_chip. At most one slice per core.
class DeploymentConfiguration {
public:
    DeploymentConfiguration() = default;

    const std::vector<Slice>& slices() const { return slices_; }
    std::pair<int, int> core_of_slice(std::size_t m) const;

    std::pair<int, int> loc_core(int neuron) const; // (chip, core)
    int loc_chip(int neuron) const;
    int slice_of_neuron(int neuron) const;

    // Count of neurons sharing the neuron's core (including itself).
    int neurons_on_core_of(int neuron) const;
    int cores_in_use_on_chip(int chip) const;
    int chips_in_use() const { return occupancy_.chips_in_use; }

    const Occupancy& occupancy() const { return occupancy_; }
    int total_neurons() const { return occupancy_.total_neurons; }
    int cores_per_chip() const { return cores_per_chip_; }

    friend DeploymentConfiguration map_sequential(const std::vector<Slice>& slices,
                                                  const MachineDescription& machine);

private:
    std::vector<Slice> slices_;
    int cores_per_chip_ = 18;
    std::vector<int> neuron_slice_; // neuron id -> slice index
    Occupancy occupancy_;
};

DeploymentConfiguration map_sequential(const std::vector<Slice>& slices,
                                       const MachineDescription& machine);

} // namespace snncost
