#include "snncost/cost.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace snncost {

WeightingMode parse_weighting_mode(const std::string& name) {
    if (name == "montecarlo") return WeightingMode::montecarlo;
    if (name == "boltzmann_reweight") return WeightingMode::boltzmann_reweight;
    if (name == "uniform_one") return WeightingMode::uniform_one;
    throw std::invalid_argument("unknown weighting mode '" + name +
                                "' (valid: montecarlo, boltzmann_reweight, uniform_one)");
}

std::string to_string(WeightingMode mode) {
    switch (mode) {
        case WeightingMode::montecarlo: return "montecarlo";
        case WeightingMode::boltzmann_reweight: return "boltzmann_reweight";
        case WeightingMode::uniform_one: return "uniform_one";
    }
    return "?";
}

double per_state_cost(const SpikeState& state, const DeploymentConfiguration& config,
                      const SnnDescription& snn, const CostConstants& constants) {
    if (static_cast<int>(state.size()) != config.total_neurons()) {
        throw std::invalid_argument("state length " + std::to_string(state.size()) +
                                    " does not match deployed neuron count " +
                                    std::to_string(config.total_neurons()));
    }
    const double chips_term = constants.inter_chip * (config.chips_in_use() - 1);
    double cost = 0.0;
    const auto& slices = config.slices();
    for (std::size_t m = 0; m < slices.size(); ++m) {
        const auto [chip, core] = config.core_of_slice(m);
        (void)core;
        const double slice_term =
            constants.intra_core * snn.connection_probability * (slices[m].size() - 1) +
            constants.same_chip * (config.cores_in_use_on_chip(chip) - 1) + chips_term;
        for (int id = slices[m].first; id < slices[m].last; ++id) {
            if (state[static_cast<std::size_t>(id)] > 0) cost += slice_term;
        }
    }
    return cost;
}

namespace {

// Combine per-sample costs (and energies where the mode needs them) in a
// fixed sequential order.
double combine(const std::vector<double>& costs, const std::vector<double>& energies,
               WeightingMode mode) {
    const std::size_t count = costs.size();
    switch (mode) {
        case WeightingMode::montecarlo: {
            double acc = 0.0;
            for (double c : costs) acc += c;
            return acc / static_cast<double>(count);
        }
        case WeightingMode::uniform_one: {
            double acc = 0.0;
            for (double c : costs) acc += c;
            return acc;
        }
        case WeightingMode::boltzmann_reweight: {
            double min_e = energies[0];
            for (double e : energies) {
                if (!std::isfinite(e)) throw std::runtime_error("non-finite sample energy");
                if (e < min_e) min_e = e;
            }
            double z = 0.0, acc = 0.0;
            for (std::size_t s = 0; s < count; ++s) {
                const double w = std::exp(-(energies[s] - min_e));
                z += w;
                acc += w * costs[s];
            }
            return acc / z;
        }
    }
    throw std::logic_error("unreachable weighting mode");
}

} // namespace

double expected_cost(const DeploymentConfiguration& config, const std::vector<SpikeState>& samples,
                     const IsingModel& model, const SnnDescription& snn,
                     const CostConstants& constants, WeightingMode mode) {
    if (samples.empty()) throw std::invalid_argument("expected_cost needs a nonempty sample list");
    const std::int64_t count = static_cast<std::int64_t>(samples.size());
    std::vector<double> costs(samples.size());
    std::vector<double> energies;
    const bool need_energy = mode == WeightingMode::boltzmann_reweight;
    if (need_energy) energies.resize(samples.size());

#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < count; ++s) {
        costs[static_cast<std::size_t>(s)] =
            per_state_cost(samples[static_cast<std::size_t>(s)], config, snn, constants);
        if (need_energy) {
            energies[static_cast<std::size_t>(s)] =
                energy(model, samples[static_cast<std::size_t>(s)]);
        }
    }
    return combine(costs, energies, mode);
}

namespace serial {

double expected_cost(const DeploymentConfiguration& config, const std::vector<SpikeState>& samples,
                     const IsingModel& model, const SnnDescription& snn,
                     const CostConstants& constants, WeightingMode mode) {
    if (samples.empty()) throw std::invalid_argument("expected_cost needs a nonempty sample list");
    std::vector<double> costs(samples.size());
    std::vector<double> energies;
    const bool need_energy = mode == WeightingMode::boltzmann_reweight;
    if (need_energy) energies.resize(samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
        costs[s] = per_state_cost(samples[s], config, snn, constants);
        if (need_energy) energies[s] = energy(model, samples[s]);
    }
    return combine(costs, energies, mode);
}

} // namespace serial

} // namespace snncost
