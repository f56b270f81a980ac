#pragma once

#include <string>
#include <vector>

#include "snncost/deployment.hpp"
#include "snncost/ising.hpp"

namespace snncost {

struct CostConstants {
    double intra_core = 0.1; // cost_ic
    double same_chip = 0.2;  // cost_scdc
    double inter_chip = 1.0; // cost_dc
};

// How per-state costs are combined over a sample set:
//   montecarlo        - plain mean; Metropolis samples already follow the
//                       model distribution
//   boltzmann_reweight - weights proportional to exp(-E(s)), normalized
//                       over the sample set
//   uniform_one       - unnormalized sum (p_m(s) fixed to 1)
enum class WeightingMode { montecarlo, boltzmann_reweight, uniform_one };

WeightingMode parse_weighting_mode(const std::string& name);
std::string to_string(WeightingMode mode);

// Cost contributed by one network spike state: every spiking neuron adds
//   intra_core * conn_prob * (neurons on its core - 1)
// + same_chip * (cores in use on its chip - 1)
// + inter_chip * (chips in use - 1)
// Silent neurons contribute nothing.
double per_state_cost(const SpikeState& state, const DeploymentConfiguration& config,
                      const SnnDescription& snn, const CostConstants& constants);

// OpenMP path; block-wise summation keeps the result identical to the
// serial reference for any thread count.
double expected_cost(const DeploymentConfiguration& config, const std::vector<SpikeState>& samples,
                     const IsingModel& model, const SnnDescription& snn,
                     const CostConstants& constants, WeightingMode mode);

namespace serial {
double expected_cost(const DeploymentConfiguration& config, const std::vector<SpikeState>& samples,
                     const IsingModel& model, const SnnDescription& snn,
                     const CostConstants& constants, WeightingMode mode);
} // namespace serial

} // namespace snncost
